#pragma once

#include <vector>

#include "plic/grid.hpp"
#include "plic/pl_map.hpp"

namespace plic {

/// Largest gap between consecutive points of V ∪ {domain ends}.
inline Rational mesh(const FiniteGrid& V, Domain d = Domain::Symmetric) {
  require(!V.empty(), ErrorKind::PreconditionViolated, "mesh of an empty grid");
  std::vector<Rational> pts{domain_left(d)};
  for (const auto& v : V.points())
    if (v >= domain_left(d) && v <= domain_right(d)) pts.push_back(v);
  pts.push_back(domain_right(d));
  sort_unique(pts);
  Rational best(0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) best = max(best, pts[i + 1] - pts[i]);
  return best;
}

inline bool v_close_points(const Rational& x, const Rational& y, const FiniteGrid& V) {
  return !V.has_point_strictly_between(x, y);
}

/// Pointwise V-closeness, decided on breakpoints, level crossings of V, and
/// one interior point per piece between them.
inline bool v_close_maps(const PLMap& f, const PLMap& g, const FiniteGrid& V) {
  require(f.domain() == g.domain(), ErrorKind::PreconditionViolated, "maps on different domains");
  std::vector<Rational> xs = breakpoint_abscissae(f);
  for (const auto& b : g.breakpoints()) xs.push_back(b.x);
  for (const auto& v : V.points()) {
    for (auto& x : crossings(f, v)) xs.push_back(x);
    for (auto& x : crossings(g, v)) xs.push_back(x);
  }
  sort_unique(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!v_close_points(f(xs[i]), g(xs[i]), V)) return false;
    if (i + 1 < xs.size()) {
      Rational m = midpoint(xs[i], xs[i + 1]);
      if (!v_close_points(f(m), g(m), V)) return false;
    }
  }
  return true;
}

/// sup |f - g|, attained at a breakpoint of one of the two maps.
inline Rational sup_distance(const PLMap& f, const PLMap& g) {
  require(f.domain() == g.domain(), ErrorKind::PreconditionViolated, "maps on different domains");
  Rational best(0);
  for (const auto& b : f.breakpoints()) best = max(best, abs(b.y - g(b.x)));
  for (const auto& b : g.breakpoints()) best = max(best, abs(f(b.x) - b.y));
  return best;
}

inline bool eps_close(const PLMap& f, const PLMap& g, const Rational& eps) {
  return sup_distance(f, g) <= eps;
}

}  // namespace plic
