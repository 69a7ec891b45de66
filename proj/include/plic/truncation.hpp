#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "plic/radial.hpp"

namespace plic {

/// A connected piece of f^{-1}(V): a point (lo == hi) or a closed plateau.
struct LevelPiece {
  Rational lo;
  Rational hi;
};

inline std::vector<LevelPiece> level_pieces(const PLMap& f, const FiniteGrid& V) {
  std::vector<LevelPiece> pieces;
  const auto& p = f.breakpoints();
  for (const auto& v : V.points()) {
    for (const auto& x : crossings(f, v)) pieces.push_back({x, x});
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i].y == v && p[i + 1].y == v) pieces.push_back({p[i].x, p[i + 1].x});
  }
  std::sort(pieces.begin(), pieces.end(), [](const LevelPiece& a, const LevelPiece& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi > b.hi);
  });
  std::vector<LevelPiece> merged;
  for (auto& piece : pieces) {
    if (!merged.empty() && piece.lo <= merged.back().hi)
      merged.back().hi = max(merged.back().hi, piece.hi);
    else
      merged.push_back(piece);
  }
  return merged;
}

struct Component {
  IntervalQ interval;
  std::vector<Rational> boundary;         // boundary within the domain, 1 or 2 points
  std::vector<Rational> boundary_values;  // distinct values of f on the boundary
  bool keeps_f() const { return boundary_values.size() == 2; }
};

struct ComponentDecomposition {
  std::vector<Component> components;
};

namespace detail {

inline std::vector<Component> complement_components(const PLMap& f, const std::vector<LevelPiece>& pieces) {
  std::vector<Component> out;
  auto add = [&](const Rational& lo, const Rational& hi, bool lo_open, bool hi_open) {
    Component c{IntervalQ::make(lo, hi, lo_open, hi_open), {}, {}};
    if (lo_open) c.boundary.push_back(lo);
    if (hi_open) c.boundary.push_back(hi);
    for (const auto& b : c.boundary) c.boundary_values.push_back(f(b));
    sort_unique(c.boundary_values);
    out.push_back(std::move(c));
  };
  if (pieces.front().lo > f.left()) add(f.left(), pieces.front().lo, false, true);
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i].hi < pieces[i + 1].lo) add(pieces[i].hi, pieces[i + 1].lo, true, true);
  if (pieces.back().hi < f.right()) add(pieces.back().hi, f.right(), true, false);
  return out;
}

}  // namespace detail

/// Components of domain ∖ f^{-1}(V). Requires a finite preimage.
inline ComponentDecomposition components(const PLMap& f, const FiniteGrid& V) {
  for (const auto& v : V.points())
    require(!has_plateau_at(f, v), ErrorKind::InfinitePreimage,
            "map is constant at grid value " + v.str() + " on a segment");
  auto pieces = level_pieces(f, V);
  require(!pieces.empty(), ErrorKind::EmptyIntersection, "f(domain) does not meet V");
  return {detail::complement_components(f, pieces)};
}

/// Truncation of f with respect to V: components of the complement of
/// f^{-1}(V) whose boundary carries a single value are flattened to it.
inline PLMap truncate(const PLMap& f, const FiniteGrid& V) {
  auto pieces = level_pieces(f, V);
  require(!pieces.empty(), ErrorKind::EmptyIntersection, "f(domain) does not meet V");
  auto comps = detail::complement_components(f, pieces);
  std::vector<Breakpoint> pts;
  for (const auto& piece : pieces) {
    pts.push_back({piece.lo, f(piece.lo)});
    if (piece.hi != piece.lo) pts.push_back({piece.hi, f(piece.hi)});
  }
  for (const auto& c : comps) {
    if (c.keeps_f()) {
      for (const auto& b : f.breakpoints())
        if (c.interval.contains(b.x)) pts.push_back(b);
    } else {
      const Rational& v = c.boundary_values.front();
      if (!c.interval.lo_open) pts.push_back({c.interval.lo, v});
      if (!c.interval.hi_open) pts.push_back({c.interval.hi, v});
    }
  }
  std::sort(pts.begin(), pts.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PLMap(f.domain(), std::move(pts));
}

/// Truncation evaluated pointwise from the definition at every breakpoint and
/// level crossing, locating the component of each point by direct search.
inline PLMap truncate_reference(const PLMap& f, const FiniteGrid& V) {
  std::vector<Rational> hits;
  for (const auto& v : V.points()) {
    auto c = crossings(f, v);
    hits.insert(hits.end(), c.begin(), c.end());
  }
  sort_unique(hits);
  require(!hits.empty(), ErrorKind::EmptyIntersection, "f(domain) does not meet V");
  std::vector<Rational> xs = breakpoint_abscissae(f);
  xs.insert(xs.end(), hits.begin(), hits.end());
  sort_unique(xs);
  std::vector<Breakpoint> pts;
  for (const auto& x : xs) {
    Rational fx = f(x);
    if (V.contains(fx)) {
      pts.push_back({x, fx});
      continue;
    }
    std::optional<Rational> left, right;
    for (const auto& h : hits) {
      if (h < x) left = h;
      if (h > x && !right) right = h;
    }
    std::vector<Rational> vals;
    if (left) vals.push_back(f(*left));
    if (right) vals.push_back(f(*right));
    bool two = vals.size() == 2 && vals[0] != vals[1];
    pts.push_back({x, two ? fx : vals.front()});
  }
  return PLMap(f.domain(), std::move(pts));
}

enum class TruncClause { None, A, B };

inline std::string to_string(TruncClause c) {
  switch (c) {
    case TruncClause::None: return "none";
    case TruncClause::A: return "a";
    case TruncClause::B: return "b";
  }
  return "unknown";
}

struct TruncDeparture {
  TruncClause clause = TruncClause::None;
  bool is_departure = false;
  std::optional<IntervalQ> image;  // truncation's image of [0, x) when a departure
};

inline void require_grid_with_zero(const FiniteGrid& V) {
  require(V.contains(Rational(0)), ErrorKind::PreconditionViolated, "grid must contain 0");
}

/// Whether x is a departure of truncate(f, V), decided from f alone.
inline TruncDeparture trunc_departures(const PLMap& f, const FiniteGrid& V, const Rational& x) {
  require_unit_fixing_zero(f);
  require_grid_with_zero(V);
  require(x > Rational(0) && x <= Rational(1), ErrorKind::OutOfDomain, "x must lie in (0,1]");
  TruncDeparture out;
  Rational fx = f(x);
  if (V.contains(fx)) {
    if (is_departure(f, x)) out.clause = TruncClause::A;
  } else {
    std::optional<Rational> c1, c2;
    for (const auto& p : level_pieces(f, V)) {
      if (p.hi < x) c1 = p.hi;
      if (p.lo > x && !c2) c2 = p.lo;
    }
    if (c1 && c2) {
      auto before = image(f, *c1, x, false, true);
      if (!before->contains(fx) && is_departure(f, *c2)) out.clause = TruncClause::B;
    }
  }
  if (out.clause == TruncClause::None) return out;
  out.is_departure = true;
  IntervalQ seen = image_before(f, x);
  std::vector<Rational> in_v;
  for (const auto& v : V.points())
    if (seen.contains(v)) in_v.push_back(v);
  if (fx > Rational(0))
    out.image = IntervalQ::make(in_v.front(), fx, false, true);
  else
    out.image = IntervalQ::make(fx, in_v.back(), true, false);
  return out;
}

struct ContourWitness {
  ContourPoint point;
  bool value_in_grid;
  bool departure_of_f;
};

inline std::vector<ContourWitness> trunc_contour_witness(const PLMap& f, const FiniteGrid& V) {
  require_unit_fixing_zero(f);
  require_grid_with_zero(V);
  std::vector<ContourWitness> out;
  for (const auto& cp : contour_points(truncate(f, V)))
    out.push_back({cp, V.contains(f(cp.alpha)), is_departure(f, cp.alpha)});
  return out;
}

struct CompareTruncReport {
  bool clause1 = false;
  bool clause2_premise = false;
  bool clause2_conclusion = false;
  bool clause3 = false;
  bool clause4 = false;
  bool clause5 = false;
  bool clause2() const { return !clause2_premise || clause2_conclusion; }
  bool all() const { return clause1 && clause2() && clause3 && clause4 && clause5; }
};

inline CompareTruncReport compare_trunc(const PLMap& f, const PLMap& g, const FiniteGrid& V, const FiniteGrid& W) {
  require(f.domain() == Domain::Symmetric && g.domain() == Domain::Symmetric, ErrorKind::PreconditionViolated,
          "compare_trunc needs maps on [-1,1]");
  require(f(Rational(0)).is_zero() && g(Rational(0)).is_zero(), ErrorKind::FixedPointViolated,
          "both maps must fix 0");
  require_grid_with_zero(V);
  require(V.subset_of(W), ErrorKind::PreconditionViolated, "V must be a subset of W");
  PLMap fV = truncate(f, V);
  PLMap gV = truncate(g, V);
  require(has_radial_contour_factor(fV), ErrorKind::PreconditionViolated,
          "clause 2: trunc(f,V) has no radial contour factor");
  require(has_radial_contour_factor(gV), ErrorKind::PreconditionViolated,
          "clause 2: trunc(g,V) has no radial contour factor");
  for (const auto& v : V.points())
    require(!has_plateau_at(f, v), ErrorKind::PreconditionViolated, "clause 1: f^{-1}(V) is infinite");

  CompareTruncReport r;
  PLMap left1 = compose(fV, truncate(g, preimage_finite(f, V)));
  r.clause1 = left1 == truncate_reference(compose(f, g), V);

  r.clause2_premise = radial_contour_factor(f) == radial_contour_factor(g);
  r.clause2_conclusion = radial_contour_factor(fV) == radial_contour_factor(gV);

  PLMap fVW = truncate(fV, W);
  r.clause3 = radial_contour_factor(fV) == radial_contour_factor(fVW);

  r.clause4 = fVW == truncate_reference(truncate_reference(f, W), V);

  PLMap tfW = radial_contour_factor(truncate(f, W));
  r.clause5 = radial_contour_factor(fV) == radial_contour_factor(truncate(tfW, V));
  return r;
}

struct RefineMatch {
  ContourPoint alpha;
  ContourPoint gamma;
  bool same_orientation;
  bool not_before;
  bool precedes_next;
};

struct RefineReport {
  std::vector<RefineMatch> matches;
  bool equal_counts = false;
  bool amplitudes_ok = true;  // |f(α_i)| ≤ |f(γ_i)| when counts are equal
  bool all() const {
    for (const auto& m : matches)
      if (!m.same_orientation || !m.not_before || !m.precedes_next) return false;
    return amplitudes_ok;
  }
};

/// Pairs each contour point of truncate(f, V) with the first contour point of
/// truncate(f, W) of the same orientation at or after it.
inline RefineReport refine_contours(const PLMap& f, const FiniteGrid& V, const FiniteGrid& W) {
  require_unit_fixing_zero(f);
  require_grid_with_zero(V);
  require(V.subset_of(W), ErrorKind::PreconditionViolated, "V must be a subset of W");
  auto cv = contour_points(truncate(f, V));
  auto cw = contour_points(truncate(f, W));
  RefineReport r;
  for (std::size_t i = 0; i < cv.size(); ++i) {
    const auto& a = cv[i];
    auto it = std::find_if(cw.begin(), cw.end(), [&](const ContourPoint& c) {
      return c.alpha >= a.alpha && c.orientation == a.orientation;
    });
    if (it == cw.end()) {
      r.matches.push_back({a, a, false, false, false});
      continue;
    }
    bool precedes = i + 1 == cv.size() || it->alpha < cv[i + 1].alpha;
    r.matches.push_back({a, *it, it->orientation == a.orientation, it->alpha >= a.alpha, precedes});
  }
  r.equal_counts = cv.size() == cw.size();
  if (r.equal_counts)
    for (std::size_t i = 0; i < cv.size(); ++i)
      if (abs(f(cv[i].alpha)) > abs(f(cw[i].alpha))) r.amplitudes_ok = false;
  return r;
}

}  // namespace plic
