#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "plic/generators.hpp"

namespace plic::lemmas {

struct Tally {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t vacuous = 0;  // premise false, conclusion not exercised
  std::vector<std::string> failures;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (ok)
      ++passed;
    else if (failures.size() < 5)
      failures.push_back(what);
  }
  bool all_passed() const { return passed == checked; }
};

using Tallies = std::map<std::string, Tally>;

using gen::Rng;

inline Rational random_between(Rng& rng, const Rational& a, const Rational& b, long steps = 8) {
  return a + (b - a) * Rational(gen::uniform_int(rng, 0, steps), steps);
}

/// x, y in a common closed gap of P ∪ {ends}: P-close by construction.
inline std::pair<Rational, Rational> close_pair(Rng& rng, const FiniteGrid& P, Domain d = Domain::Symmetric) {
  std::vector<Rational> pts{domain_left(d)};
  pts.insert(pts.end(), P.points().begin(), P.points().end());
  pts.push_back(Rational(1));
  sort_unique(pts);
  std::size_t i = static_cast<std::size_t>(gen::uniform_int(rng, 0, static_cast<long>(pts.size()) - 2));
  return {random_between(rng, pts[i], pts[i + 1]), random_between(rng, pts[i], pts[i + 1])};
}

inline std::string show(const PLMap& f) { return f.str(); }

/// compare_trunc clauses on one random instance. Half of the instances take
/// g = f ∘ u with u covering, so clause 2's premise holds.
inline void compare_trunc_case(Rng& rng, Tallies& t) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    PLMap f = gen::random_radial_map(rng, 6, 8);
    PLMap g = gen::coin(rng) ? compose(f, gen::random_covering_map(rng, 3, 8)) : gen::random_radial_map(rng, 6, 8);
    if (!has_radial_contour_factor(g)) continue;
    FiniteGrid V = gen::random_grid(rng, 9, 8);
    FiniteGrid W = gen::random_refinement(rng, V, 6, 16);
    CompareTruncReport r;
    try {
      r = compare_trunc(f, g, V, W);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PreconditionViolated) continue;
      throw;
    }
    std::string ctx = "f=" + show(f) + " g=" + show(g) + " V=" + V.str() + " W=" + W.str();
    t["compare_trunc.1"].record(r.clause1, ctx);
    if (r.clause2_premise)
      t["compare_trunc.2"].record(r.clause2_conclusion, ctx);
    else
      ++t["compare_trunc.2"].vacuous;
    t["compare_trunc.3"].record(r.clause3, ctx);
    t["compare_trunc.4"].record(r.clause4, ctx);
    t["compare_trunc.5"].record(r.clause5, ctx);
    return;
  }
  fail(ErrorKind::InternalInvariant, "compare_trunc generator found no admissible instance");
}

inline void v_close_case(Rng& rng, Tallies& t) {
  PLMap f = gen::random_map(rng, {Domain::Symmetric, 8, 8, false, true});
  FiniteGrid V = gen::random_grid(rng, 9, 8);
  V = V.unite(FiniteGrid{f(Rational(0))});
  FiniteGrid W = gen::random_refinement(rng, V, 6, 16);
  PLMap fV = truncate(f, V);
  PLMap fW = truncate(f, W);
  std::string ctx = "f=" + show(f) + " V=" + V.str() + " W=" + W.str();
  t["v_close.3"].record(v_close_maps(f, fV, V), ctx);
  t["v_close.4"].record(v_close_maps(fW, fV, V), ctx);
  FiniteGrid P = preimage_finite(f, V);
  for (int i = 0; i < 4; ++i) {
    auto [x, y] = close_pair(rng, P);
    std::string c = ctx + " x=" + x.str() + " y=" + y.str();
    t["v_close.5"].record(v_close_points(f(x), f(y), V), c);
    t["v_close.6"].record(v_close_points(f(x), fV(y), V), c);
  }
}

inline void f_s_t_case(Rng& rng, Tallies& t) {
  for (;;) {
    PLMap f = gen::random_radial_map(rng, 7, 8);
    FiniteGrid V = gen::random_grid(rng, 9, 8);
    PLMap fV = truncate(f, V);
    if (!has_radial_contour_factor(fV)) continue;
    Factorization fac = factor_contour(fV);
    FiniteGrid P = preimage_finite(f, V);
    FiniteGrid Q = preimage_finite(fac.t, V);
    for (int i = 0; i < 4; ++i) {
      auto [x, y] = close_pair(rng, P);
      t["f_s_t_v_close"].record(v_close_points(fac.s(x), fac.s(y), Q),
                                "f=" + show(f) + " V=" + V.str() + " x=" + x.str() + " y=" + y.str());
    }
    return;
  }
}

inline bool plateau_on_grid(const PLMap& f, const FiniteGrid& V) {
  for (std::size_t i = 0; i < f.segments(); ++i)
    if (f.slope(i).is_zero() && V.contains(f.breakpoints()[i].y)) return true;
  return false;
}

inline void interval_image_case(Rng& rng, Tallies& t) {
  PLMap f;
  FiniteGrid V;
  do {
    f = gen::random_map(rng, {Domain::Symmetric, 8, 8, false, gen::coin(rng)});
    V = gen::random_grid(rng, 9, 8).unite(FiniteGrid{f(Rational(0))});
  } while (plateau_on_grid(f, V));
  PLMap fV = truncate(f, V);
  for (int i = 0; i < 10; ++i) {
    Rational a = gen::lattice(rng, -16, 16, 16), b = gen::lattice(rng, -16, 16, 16);
    if (b < a) std::swap(a, b);
    IntervalQ img_t = *image(fV, a, b, false, false);
    IntervalQ img_f = *image(f, a, b, false, false);
    t["interval_image_trunc"].record(img_t.degenerate() || img_t.subset_of(img_f),
                                     "f=" + show(f) + " V=" + V.str() + " A=[" + a.str() + "," + b.str() + "]");
  }
}

struct MeshCase {
  Rational actual, bound;
};

inline MeshCase mesh_preim_case(Rng& rng, Tallies& t, bool zigzag) {
  for (;;) {
    PLMap f = zigzag ? gen::random_uniform_zigzag(rng) : gen::random_unit_map(rng);
    FiniteGrid V = gen::random_grid(rng, 9, 8);
    if (zigzag) V = V.unite(FiniteGrid(breakpoint_values(f)));
    PLMap fV = truncate(f, V);
    if (is_constant(fV)) continue;
    ContourData cps = contour_points(fV);
    PLMap tf = contour_factor(fV);
    Rational n(static_cast<long>(cps.size()));
    Rational bound = mesh(V) / (n * abs(f(cps.front().alpha)));
    Rational actual = mesh(preimage_finite(tf, V), Domain::Unit);
    t["mesh_preim_contour"].record(actual <= bound, "f=" + show(f) + " V=" + V.str());
    return {actual, bound};
  }
}

inline std::vector<Rational> pair_candidates(const PLMap& f, const PLMap& g, int sign) {
  std::vector<Rational> out;
  for (const auto& x : breakpoint_abscissae(g)) out.push_back(x);
  for (const auto& x : breakpoint_abscissae(compose(f, g))) out.push_back(x);
  for (const auto& b : f.breakpoints())
    for (const auto& x : crossings(g, b.x)) out.push_back(x);
  out.push_back(Rational(sign));
  std::vector<Rational> keep;
  for (const auto& x : out)
    if (x.sign() == sign) keep.push_back(x);
  sort_unique(keep);
  return keep;
}

/// Classification of a pair for f ∘ g, direct against the composition rule.
inline bool comp_dep_case(Rng& rng, Tallies& t) {
  PLMap f = gen::random_radial_map(rng, 5, 8);
  PLMap g = gen::random_radial_map(rng, 5, 8);
  auto pick = [&](int sign) {
    auto c = pair_candidates(f, g, sign);
    if (gen::coin(rng) || c.empty()) return gen::lattice(rng, sign < 0 ? -8 : 1, sign < 0 ? -1 : 8, 8);
    return c[static_cast<std::size_t>(gen::uniform_int(rng, 0, static_cast<long>(c.size()) - 1))];
  };
  Rational x1 = pick(-1), x2 = pick(1);
  // half the time, take the innermost abscissae of a realized value pair of f ∘ g
  PLMap h = compose(f, g);
  RadialDepartures rd(h);
  std::vector<std::pair<std::size_t, std::size_t>> realized = rd.positive();
  realized.insert(realized.end(), rd.negative().begin(), rd.negative().end());
  if (!realized.empty() && gen::coin(rng)) {
    auto [a, b] = realized[static_cast<std::size_t>(gen::uniform_int(rng, 0, static_cast<long>(realized.size()) - 1))];
    auto left = crossings(h, rd.representatives()[a]), right = crossings(h, rd.representatives()[b]);
    std::optional<Rational> in_left, in_right;
    for (const auto& x : left)
      if (x.sign() < 0) in_left = x;
    for (const auto& x : right)
      if (x.sign() > 0 && !in_right) in_right = x;
    if (in_left && in_right) {
      x1 = *in_left;
      x2 = *in_right;
    }
  }
  CompDepResult r = comp_dep_check(f, g, x1, x2);
  t["comp_dep"].record(r.agree, "f=" + show(f) + " g=" + show(g) + " x1=" + x1.str() + " x2=" + x2.str());
  return r.direct != PairKind::NotDeparture;
}

/// The three characterizations of equal contour factors agree.
inline bool same_contour_case(Rng& rng, Tallies& t, bool engineered) {
  PLMap f, g;
  if (engineered) {
    std::tie(f, g) = gen::same_contour_pair(rng);
  } else {
    f = gen::random_unit_map(rng, 4, 4);
    g = gen::random_unit_map(rng, 4, 4);
  }
  bool a = same_contour(f, g, ContourMethod::FactorEquality);
  bool b = same_contour(f, g, ContourMethod::DepartureMatching);
  bool c = same_contour(f, g, ContourMethod::ContourMatching);
  t["same_contour"].record(a == b && b == c, "f=" + show(f) + " g=" + show(g));
  return a;
}

inline void factor_case(Rng& rng, Tallies& t) {
  PLMap f = gen::random_radial_map(rng, 8, 8);
  try {
    Factorization fac = factor_contour(f);
    t["factor_contour"].record(compose(fac.t, fac.s) == f && fac.s(Rational(0)).is_zero() &&
                                   fac.t == radial_contour_factor(f),
                               "f=" + show(f));
  } catch (const Error& e) {
    t["factor_contour"].record(false, "f=" + show(f) + " " + e.what());
  }
}

inline void trunc_contour_case(Rng& rng, Tallies& t) {
  for (;;) {
    PLMap f = gen::random_unit_map(rng);
    FiniteGrid V = gen::random_grid(rng, 9, 8);
    if (is_constant(truncate(f, V))) continue;
    bool ok = true;
    for (const auto& w : trunc_contour_witness(f, V)) ok = ok && w.value_in_grid && w.departure_of_f;
    t["trunc_contour_witness"].record(ok, "f=" + show(f) + " V=" + V.str());
    FiniteGrid W = gen::random_refinement(rng, V, 6, 16);
    RefineReport rr = refine_contours(f, V, W);
    t["refine_contours"].record(rr.all() && contour_points(truncate(f, W)).size() >= rr.matches.size(),
                                "f=" + show(f) + " V=" + V.str() + " W=" + W.str());
    return;
  }
}

inline void well_def_preimage_case(Rng& rng, Tallies& t) {
  for (;;) {
    PLMap f = gen::random_radial_map(rng, 5, 8);
    PLMap g = gen::random_radial_map(rng, 5, 8);
    FiniteGrid V = gen::random_grid(rng, 9, 8);
    if (!has_radial_contour_factor(truncate(compose(f, g), V))) continue;
    t["well_def_preimage"].record(has_radial_contour_factor(truncate(g, preimage_finite(f, V))),
                                  "f=" + show(f) + " g=" + show(g) + " V=" + V.str());
    return;
  }
}

inline std::uint64_t stream(std::size_t lemma, std::size_t i) { return (static_cast<std::uint64_t>(lemma) << 32) | i; }

/// All lemma checks, `cases` instances each, deterministic in the seed.
inline Tallies run_suite(std::uint64_t seed, std::size_t cases) {
  Tallies t;
  for (std::size_t i = 0; i < cases; ++i) {
    auto r0 = gen::case_rng(seed, stream(0, i));
    compare_trunc_case(r0, t);
    auto r1 = gen::case_rng(seed, stream(1, i));
    v_close_case(r1, t);
    auto r2 = gen::case_rng(seed, stream(2, i));
    f_s_t_case(r2, t);
    auto r3 = gen::case_rng(seed, stream(3, i));
    interval_image_case(r3, t);
    auto r4 = gen::case_rng(seed, stream(4, i));
    mesh_preim_case(r4, t, i % 2 == 0);
    auto r5 = gen::case_rng(seed, stream(5, i));
    comp_dep_case(r5, t);
    auto r6 = gen::case_rng(seed, stream(6, i));
    same_contour_case(r6, t, i % 3 == 0);
    auto r7 = gen::case_rng(seed, stream(7, i));
    factor_case(r7, t);
    auto r8 = gen::case_rng(seed, stream(8, i));
    trunc_contour_case(r8, t);
    auto r9 = gen::case_rng(seed, stream(9, i));
    well_def_preimage_case(r9, t);
  }
  return t;
}

}  // namespace plic::lemmas
