#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "plic/systems.hpp"

namespace plic::gen {

using Rng = std::mt19937_64;

/// Per-case generator seeded from (seed, case index).
inline Rng case_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline bool coin(Rng& rng) { return uniform_int(rng, 0, 1) == 1; }

/// a/den with a uniform in [lo, hi].
inline Rational lattice(Rng& rng, long lo, long hi, long den) { return Rational(uniform_int(rng, lo, hi), den); }

/// `count` distinct abscissae strictly inside (a, b) on the lattice 1/den.
inline std::vector<Rational> interior_abscissae(Rng& rng, const Rational& a, const Rational& b, std::size_t count, long den) {
  std::vector<long> pool;
  for (long i = -den; i <= den; ++i) {
    Rational x(i, den);
    if (x > a && x < b) pool.push_back(i);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > count) pool.resize(count);
  std::sort(pool.begin(), pool.end());
  std::vector<Rational> out;
  for (auto i : pool) out.emplace_back(i, den);
  return out;
}

struct MapOptions {
  Domain domain = Domain::Symmetric;
  std::size_t max_interior = 6;
  long den = 8;
  bool fix_zero = true;
  bool nowhere_constant = true;
};

inline PLMap random_map(Rng& rng, const MapOptions& opt = {}) {
  std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(opt.max_interior)));
  Rational a = domain_left(opt.domain);
  auto xs = interior_abscissae(rng, a, Rational(1), n, opt.den);
  xs.insert(xs.begin(), a);
  xs.push_back(Rational(1));
  if (opt.fix_zero && opt.domain == Domain::Symmetric) {
    xs.push_back(Rational(0));
    sort_unique(xs);
  }
  std::vector<Breakpoint> pts;
  for (const auto& x : xs) {
    Rational y;
    if (opt.fix_zero && x.is_zero()) {
      y = Rational(0);
    } else {
      do {
        y = lattice(rng, -opt.den, opt.den, opt.den);
      } while (opt.nowhere_constant && !pts.empty() && y == pts.back().y);
    }
    if (opt.nowhere_constant && !pts.empty() && y == pts.back().y && !(opt.fix_zero && x.is_zero()))
      y = pts.back().y.is_zero() ? Rational(1, opt.den) : Rational(0);
    pts.push_back({x, y});
  }
  // fixing 0 can repeat a neighbour's value; move the neighbour off both of its own neighbours
  if (opt.nowhere_constant)
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (pts[i].y == pts[i + 1].y) {
        std::size_t j = pts[i].x.is_zero() && opt.fix_zero ? i + 1 : i;
        Rational step(pts[j].y.sign() >= 0 ? -1 : 1, opt.den);
        do {
          pts[j].y += step;
        } while ((j > 0 && pts[j].y == pts[j - 1].y) || (j + 1 < pts.size() && pts[j].y == pts[j + 1].y));
      }
  return PLMap(opt.domain, std::move(pts));
}

/// A random map on [-1,1] fixing 0 whose halves are both non-constant.
inline PLMap random_radial_map(Rng& rng, std::size_t max_interior = 6, long den = 8) {
  for (;;) {
    PLMap f = random_map(rng, {Domain::Symmetric, max_interior, den, true, true});
    if (has_radial_contour_factor(f)) return f;
  }
}

/// A random grid on the lattice 1/den containing 0, with at most max_points.
inline FiniteGrid random_grid(Rng& rng, std::size_t max_points = 9, long den = 8, bool with_ends = false) {
  std::vector<Rational> pts{Rational(0)};
  if (with_ends) {
    pts.push_back(Rational(-1));
    pts.push_back(Rational(1));
  }
  std::size_t extra = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_points) - 1));
  for (std::size_t i = 0; i < extra && pts.size() < max_points; ++i) pts.push_back(lattice(rng, -den, den, den));
  return FiniteGrid(pts);
}

/// W ⊇ V with some additional lattice points.
inline FiniteGrid random_refinement(Rng& rng, const FiniteGrid& V, std::size_t extra = 4, long den = 16) {
  std::vector<Rational> pts = V.points();
  std::size_t n = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(extra)));
  for (std::size_t i = 0; i < n; ++i) pts.push_back(lattice(rng, -den, den, den));
  return FiniteGrid(pts);
}

/// Zigzag on [0,1] through equally spaced alternating values of growing amplitude.
inline PLMap random_uniform_zigzag(Rng& rng, std::size_t max_points = 5, long den = 8) {
  std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_points)));
  std::vector<long> amps;
  for (long a = 1; a <= den; ++a) amps.push_back(a);
  std::shuffle(amps.begin(), amps.end(), rng);
  amps.resize(std::min<std::size_t>(n, amps.size()));
  std::sort(amps.begin(), amps.end());
  long sign = coin(rng) ? 1 : -1;
  std::vector<Rational> values{Rational(0)};
  for (auto a : amps) {
    values.emplace_back(sign * a, den);
    sign = -sign;
  }
  return PLMap::uniform(Domain::Unit, values);
}

/// A map on [0,1] fixing 0 with values in [0,1] that reaches 1. Its contour
/// factor is the identity and g ∘ u has the contour factor of g.
inline PLMap random_covering_half(Rng& rng, std::size_t max_interior = 4, long den = 8) {
  std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_interior)));
  auto xs = interior_abscissae(rng, Rational(0), Rational(1), n, den);
  std::vector<Breakpoint> pts{{Rational(0), Rational(0)}};
  for (const auto& x : xs) pts.push_back({x, lattice(rng, 1, den, den)});
  pts.push_back({Rational(1), lattice(rng, 1, den, den)});
  std::size_t top = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(pts.size()) - 1));
  pts[top].y = Rational(1);
  for (std::size_t i = 1; i + 1 < pts.size(); ++i)
    if (pts[i].y == pts[i + 1].y) pts[i + 1 == top ? i : i + 1].y -= Rational(1, den);
  return PLMap(Domain::Unit, std::move(pts));
}

/// Symmetric version: covering halves glued so the radial contour factor is the identity.
inline PLMap random_covering_map(Rng& rng, std::size_t max_interior = 4, long den = 8) {
  PLMap right = random_covering_half(rng, max_interior, den);
  PLMap left = random_covering_half(rng, max_interior, den);
  std::vector<Breakpoint> neg;
  for (const auto& b : left.breakpoints()) neg.push_back({b.x, -b.y});
  return glue_halves(right, PLMap(Domain::Unit, std::move(neg)));
}

/// Random map on [0,1] fixing 0 with a non-trivial contour.
inline PLMap random_unit_map(Rng& rng, std::size_t max_interior = 6, long den = 8) {
  for (;;) {
    PLMap f = random_map(rng, {Domain::Unit, max_interior, den, true, true});
    if (!is_constant(f)) return f;
  }
}

/// A pair on [0,1] sharing a contour factor by construction: (f, f ∘ u).
inline std::pair<PLMap, PLMap> same_contour_pair(Rng& rng) {
  PLMap f = random_unit_map(rng);
  PLMap u = random_covering_half(rng);
  return {f, compose(f, u)};
}

struct Triple {
  PLMap f1, f2, f3;
};

/// Triples satisfying t_{f1} = t_{f1∘f2} and t_{f2} = t_{f2∘f3}: f2 and f3 are
/// random maps pre-composed with covering maps, f1 is random.
inline Triple bridged_triple(Rng& rng) {
  PLMap f1 = random_radial_map(rng, 5, 8);
  PLMap f3 = random_covering_map(rng, 3, 8);
  PLMap f2 = coin(rng) ? random_covering_map(rng, 3, 8) : compose(random_covering_map(rng, 2, 4), random_covering_map(rng, 2, 4));
  return {f1, f2, f3};
}

/// Bonding maps with at most two laps, so long compositions stay small.
inline InverseSystemPrefix random_system(Rng& rng, std::size_t n, long den = 8) {
  InverseSystemPrefix sys;
  for (std::size_t i = 0; i < n; ++i) {
    Rational c = lattice(rng, -den + 1, den - 1, den);
    Rational a = lattice(rng, -den, den, den), b = lattice(rng, -den, den, den), m = lattice(rng, -den, den, den);
    if (coin(rng))
      sys.maps.push_back(PLMap(Domain::Symmetric, {{Rational(-1), a}, {Rational(1), b}}));
    else
      sys.maps.push_back(PLMap(Domain::Symmetric, {{Rational(-1), a}, {c, m}, {Rational(1), b}}));
  }
  return sys;
}

}  // namespace plic::gen
