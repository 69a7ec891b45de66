#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plic/factorization.hpp"
#include "plic/truncation.hpp"

namespace plic {

/// Bonding maps f_1, …, f_N of a finite inverse-system prefix.
struct InverseSystemPrefix {
  std::vector<PLMap> maps;

  std::size_t length() const { return maps.size(); }
  /// f_i, 1-indexed.
  const PLMap& at(std::size_t i) const {
    require(i >= 1 && i <= maps.size(), ErrorKind::IndexOutOfRange, "map index " + std::to_string(i));
    return maps[i - 1];
  }
  std::vector<bool> nowhere_constant_flags() const {
    std::vector<bool> out;
    for (const auto& f : maps) out.push_back(is_nowhere_constant(f));
    return out;
  }
  bool all_fix_zero() const {
    for (const auto& f : maps)
      if (!f(Rational(0)).is_zero()) return false;
    return true;
  }
};

/// f_j^l = f_j ∘ ⋯ ∘ f_{l-1}, identity when j = l.
inline PLMap compose_range(const InverseSystemPrefix& sys, std::size_t j, std::size_t l) {
  require(j >= 1 && j <= l && l <= sys.length() + 1, ErrorKind::IndexOutOfRange,
          "compose_range(" + std::to_string(j) + ", " + std::to_string(l) + ") with N = " +
              std::to_string(sys.length()));
  PLMap out = PLMap::identity();
  for (std::size_t i = l; i-- > j;) out = compose(sys.at(i), out);
  return out;
}

/// All f_j^l for 1 ≤ j ≤ l ≤ N+1, built incrementally.
class CompositionTable {
 public:
  explicit CompositionTable(const InverseSystemPrefix& sys) : n_(sys.length()) {
    table_.resize(n_ + 2);
    for (std::size_t j = 1; j <= n_ + 1; ++j) {
      table_[j].resize(n_ + 2);
      table_[j][j] = PLMap::identity();
      for (std::size_t l = j + 1; l <= n_ + 1; ++l) table_[j][l] = compose(table_[j][l - 1], sys.at(l - 1));
    }
  }
  const PLMap& operator()(std::size_t j, std::size_t l) const { return table_[j][l]; }

 private:
  std::size_t n_;
  std::vector<std::vector<PLMap>> table_;
};

/// 2-segment homeomorphism sending (-1, x, 1) to (-1, 0, 1).
inline PLMap centering_homeomorphism(const Rational& x) {
  if (x.is_zero()) return PLMap::identity();
  return PLMap(Domain::Symmetric, {{Rational(-1), Rational(-1)}, {x, Rational(0)}, {Rational(1), Rational(1)}});
}

/// Conjugates the system so the thread (x_1, …, x_{N+1}) becomes the zero thread.
inline InverseSystemPrefix normalize_point_to_zero(const InverseSystemPrefix& sys, const std::vector<Rational>& coords) {
  require(coords.size() == sys.length() + 1, ErrorKind::LengthMismatch,
          "need N+1 = " + std::to_string(sys.length() + 1) + " coordinates, got " + std::to_string(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i)
    require(coords[i] > Rational(-1) && coords[i] < Rational(1), ErrorKind::EndpointCoordinate,
            "coordinate " + std::to_string(i + 1) + " is an endpoint");
  for (std::size_t i = 1; i <= sys.length(); ++i)
    require(sys.at(i)(coords[i]) == coords[i - 1], ErrorKind::NotAThread,
            "f_" + std::to_string(i) + "(x_" + std::to_string(i + 1) + ") != x_" + std::to_string(i));
  InverseSystemPrefix out;
  for (std::size_t i = 1; i <= sys.length(); ++i)
    out.maps.push_back(conjugate(sys.at(i), centering_homeomorphism(coords[i - 1]), centering_homeomorphism(coords[i])));
  return out;
}

struct MioEntry {
  std::size_t j, k, l;
  Rational dev1;  // sup |f_j^l - f_j^k ∘ g_k^l|
  Rational dev2;  // sup |g_j^l - g_j^k ∘ f_k^l|
  Rational eps;
  bool pass;
};

struct MioReport {
  std::vector<MioEntry> entries;
  bool pass = true;
  Rational max_dev1;
  Rational max_dev2;
  std::optional<MioEntry> first_failure() const {
    for (const auto& e : entries)
      if (!e.pass) return e;
    return std::nullopt;
  }
};

/// Exact deviation table of the two ε-commutativity conditions over all
/// j ≤ k ≤ l ≤ N+1. eps is indexed by k and may omit k = N+1, where both
/// deviations vanish identically.
inline MioReport mioduszewski_report(const InverseSystemPrefix& F, const InverseSystemPrefix& G,
                                     const std::vector<Rational>& eps) {
  std::size_t n = F.length();
  require(G.length() == n, ErrorKind::LengthMismatch, "systems have different lengths");
  require(eps.size() == n || eps.size() == n + 1, ErrorKind::LengthMismatch,
          "need N or N+1 tolerances, got " + std::to_string(eps.size()));
  CompositionTable tf(F), tg(G);
  MioReport r;
  for (std::size_t j = 1; j <= n + 1; ++j)
    for (std::size_t k = j; k <= n + 1; ++k)
      for (std::size_t l = k; l <= n + 1; ++l) {
        Rational d1 = sup_distance(tf(j, l), compose(tf(j, k), tg(k, l)));
        Rational d2 = sup_distance(tg(j, l), compose(tg(j, k), tf(k, l)));
        Rational e = k <= eps.size() ? eps[k - 1] : Rational(0);
        bool pass = d1 <= e && d2 <= e;
        r.entries.push_back({j, k, l, d1, d2, e, pass});
        r.pass = r.pass && pass;
        r.max_dev1 = max(r.max_dev1, d1);
        r.max_dev2 = max(r.max_dev2, d2);
      }
  return r;
}

inline Rational sup_abs_on_right(const PLMap& f) {
  IntervalQ im = *image(f, Rational(0), Rational(1), false, false);
  return max(abs(im.lo), abs(im.hi));
}

struct NearlyConstantResult {
  bool applicable = false;
  std::size_t obstructing_index = 0;
  std::vector<std::size_t> indices;  // i_1 < i_2 < ⋯
  InverseSystemPrefix F;             // F_k = f_{i_k}^{i_{k+1}}
  InverseSystemPrefix g;             // F_k on [-1,0], 0 on [0,1]
  std::optional<MioReport> report;
};

/// Finite-depth version of the nearly-constant-half reduction.
inline NearlyConstantResult nearly_constant_transform(const InverseSystemPrefix& sys, const std::vector<Rational>& eps) {
  NearlyConstantResult out;
  std::size_t n = sys.length();
  require(!eps.empty(), ErrorKind::PreconditionViolated, "empty tolerance schedule");
  CompositionTable table(sys);
  // The contraction hypothesis, checked at every index of the prefix.
  for (std::size_t i = 1; i <= n; ++i)
    for (const auto& e : eps) {
      bool found = false;
      for (std::size_t m = i + 1; m <= n + 1 && !found; ++m) found = sup_abs_on_right(table(i, m)) < e;
      if (!found) {
        out.obstructing_index = i;
        return out;
      }
    }
  out.indices.push_back(1);
  for (std::size_t ell = 2; ell <= eps.size() + 1; ++ell) {
    std::optional<std::size_t> next;
    for (std::size_t cand = out.indices.back() + 1; cand <= n + 1 && !next; ++cand) {
      bool ok = true;
      for (std::size_t j = 1; j < ell && ok; ++j) {
        Rational bound = eps[j - 1];
        for (std::size_t k = j; k < ell; ++k) bound = min(bound, eps[k - 1]);
        ok = sup_abs_on_right(table(out.indices[j - 1], cand)) < bound;
      }
      if (ok) next = cand;
    }
    if (!next) {
      out.obstructing_index = out.indices.back();
      return out;
    }
    out.indices.push_back(*next);
  }
  for (std::size_t k = 0; k + 1 < out.indices.size(); ++k) {
    PLMap Fk = table(out.indices[k], out.indices[k + 1]);
    out.F.maps.push_back(Fk);
    PLMap left = left_reflected(Fk);
    out.g.maps.push_back(glue_halves(PLMap::constant(Domain::Unit, Rational(0)), left));
  }
  out.report = mioduszewski_report(out.F, out.g, eps);
  out.applicable = true;
  return out;
}

struct ContourGroup {
  PLMap factor;
  std::vector<std::size_t> members;  // indices into the family
};

/// Groups the family by the radial contour factor of its truncations and
/// returns a largest group, the first encountered on ties.
inline ContourGroup pigeonhole_contour_group(const std::vector<PLMap>& family, const FiniteGrid& V) {
  require(!family.empty(), ErrorKind::PreconditionViolated, "empty family");
  std::vector<ContourGroup> groups;
  for (std::size_t i = 0; i < family.size(); ++i) {
    PLMap tr = truncate(family[i], V);
    require(has_radial_contour_factor(tr), ErrorKind::PreconditionViolated,
            "member " + std::to_string(i) + " truncates without a radial contour factor");
    PLMap t = radial_contour_factor(tr);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const ContourGroup& g) { return g.factor == t; });
    if (it == groups.end())
      groups.push_back({t, {i}});
    else
      it->members.push_back(i);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < groups.size(); ++i)
    if (groups[i].members.size() > groups[best].members.size()) best = i;
  return groups[best];
}

struct LadderPolicy {
  unsigned max_rung = 12;
};

struct LadderResult {
  FiniteGrid W;
  std::vector<std::size_t> members;
  PLMap t;
  unsigned rung = 0;
  Rational achieved_mesh;
};

/// Walks V0 ⊆ V0 ∪ dyadic(1) ⊆ ⋯ narrowing the family to a largest common
/// truncation factor t until mesh(t^{-1}(W)) < delta and `accept` holds.
inline LadderResult select_V_and_subfamily(const std::vector<PLMap>& family, const FiniteGrid& V0, const Rational& delta,
                                           const LadderPolicy& policy = {},
                                           const std::function<bool(const FiniteGrid&)>& accept = nullptr) {
  require_grid_with_zero(V0);
  std::vector<std::size_t> alive(family.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  std::optional<Rational> best;
  for (unsigned m = 0; m <= policy.max_rung; ++m) {
    FiniteGrid W = m == 0 ? V0 : V0.unite(dyadic_grid(m));
    bool all_defined = true;
    for (auto i : alive) all_defined = all_defined && has_radial_contour_factor(truncate(family[i], W));
    if (!all_defined) continue;
    std::vector<PLMap> sub;
    for (auto i : alive) sub.push_back(family[i]);
    ContourGroup g = pigeonhole_contour_group(sub, W);
    std::vector<std::size_t> members;
    for (auto i : g.members) members.push_back(alive[i]);
    Rational achieved = mesh(preimage_finite(g.factor, W));
    best = best ? min(*best, achieved) : achieved;
    alive = members;
    if (achieved < delta && (!accept || accept(W))) return {W, members, g.factor, m, achieved};
  }
  fail(ErrorKind::LadderExhausted,
       "no rung up to " + std::to_string(policy.max_rung) + " reached mesh < " + delta.str() +
           (best ? "; best mesh " + best->str() : std::string("; no rung had defined factors")));
}

struct StagePolicy {
  std::size_t window = 10;
  LadderPolicy ladder;
  unsigned v1_max_rung = 8;
  std::size_t max_nodes = default_max_nodes();
};

/// One odd stage k of the recursive construction, over a finite index window.
struct StageState {
  std::size_t k = 1;
  std::vector<std::size_t> J;  // retained indices, J_k(k) < J_k(k+1) < ⋯
  std::size_t window = 0;
  FiniteGrid V_prime_k;
  FiniteGrid V_k, V_k1, V_prime_k2;
  PLMap F_k, F_k1;
  PLMap G_k, G_k1;  // truncations of F_k, F_{k+1}
  PLMap f3;         // truncation of f_{J(k+2)}^{J(k+3)} by V'_{k+2}
  PLMap t_k, t_prime_k2;
  PLMap s_bridge;
  Rational eps_k, delta_k;
  std::size_t bridge_nodes = 0;

  std::size_t J_at(std::size_t m) const { return J.at(m - k); }
};

namespace detail {

inline std::vector<std::size_t> members_of(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& pick) {
  std::vector<std::size_t> out;
  for (auto p : pick) out.push_back(idx[p]);
  std::sort(out.begin(), out.end());
  return out;
}

inline ContourGroup group_over(const CompositionTable& table, std::size_t from, const std::vector<std::size_t>& idx,
                               const FiniteGrid& V, std::vector<std::size_t>& chosen) {
  std::vector<PLMap> fam;
  for (auto n : idx) fam.push_back(table(from, n));
  ContourGroup g = pigeonhole_contour_group(fam, V);
  chosen = members_of(idx, g.members);
  return g;
}

inline bool half_collapsed(const PLMap& f) {
  return is_constant(right_half(f)) || is_constant(left_reflected(f));
}

}  // namespace detail

/// Checks the StageState invariants independently of how the stage was built.
inline void assert_stage(const StageState& st) {
  require(preimage_finite(st.F_k, st.V_k) == st.V_k1, ErrorKind::InternalInvariant, "V_{k+1} != F_k^{-1}(V_k)");
  require(preimage_finite(st.F_k1, st.V_k1) == st.V_prime_k2, ErrorKind::InternalInvariant,
          "V'_{k+2} != F_{k+1}^{-1}(V_{k+1})");
  require(radial_contour_factor(truncate(st.F_k, st.V_k)) == st.t_k, ErrorKind::InternalInvariant,
          "t_k is not the factor of trunc(F_k, V_k)");
  require(compose(st.t_k, st.s_bridge) == compose(truncate(st.F_k, st.V_k), truncate(st.F_k1, st.V_k1)),
          ErrorKind::InternalInvariant, "t_k ∘ s != trunc(F_k) ∘ trunc(F_{k+1})");
  require(mesh(preimage_finite(st.t_k, st.V_k)) < st.delta_k, ErrorKind::InternalInvariant,
          "mesh(t_k^{-1}(V_k)) >= delta_k");
  require(no_negative(orientation_census(compose(st.s_bridge, st.t_prime_k2))), ErrorKind::InternalInvariant,
          "s ∘ t'_{k+2} has negative radial departures");
  require(st.V_prime_k.subset_of(st.V_k), ErrorKind::InternalInvariant, "V_k does not contain V'_k");
}

/// Builds stage k = 2·prior.size() + 1 from the earlier stages.
inline StageState build_stage(const InverseSystemPrefix& sys, const std::vector<StageState>& prior, const Rational& delta_k,
                              const StagePolicy& policy = {}) {
  require(sys.all_fix_zero(), ErrorKind::PreconditionViolated, "every bonding map must fix 0");
  require(delta_k > Rational(0), ErrorKind::PreconditionViolated, "delta_k must be positive");
  StageState st;
  st.k = 2 * prior.size() + 1;
  st.delta_k = delta_k;
  st.window = policy.window;
  std::size_t top = sys.length() + 1;

  // Indices available to this stage: J_{k-2} beyond J_k(k), or the prefix.
  std::size_t start;
  std::vector<std::size_t> pool;
  if (prior.empty()) {
    start = 1;
    for (std::size_t n = 2; n <= top; ++n) pool.push_back(n);
  } else {
    const StageState& p = prior.back();
    start = p.J_at(st.k);
    for (auto n : p.J)
      if (n > start) pool.push_back(n);
  }
  if (pool.size() > policy.window) pool.resize(policy.window);
  require(pool.size() >= 3, ErrorKind::WindowTooShort,
          "stage " + std::to_string(st.k) + " has " + std::to_string(pool.size()) + " indices, needs 3");
  // A table over the relevant index range only.
  InverseSystemPrefix local;
  for (std::size_t i = start; i < pool.back(); ++i) local.maps.push_back(sys.at(i));
  CompositionTable table(local);
  auto f = [&](std::size_t a, std::size_t b) -> const PLMap& { return table(a - start + 1, b - start + 1); };

  for (auto n : pool)
    require(!detail::half_collapsed(f(start, n)), ErrorKind::DiameterGuardFailed,
            "f_" + std::to_string(start) + "^" + std::to_string(n) + " collapses a half of [-1,1]");

  // V'_k: given by the previous stage, or the coarsest dyadic grid that
  // gives every truncation in the window a radial contour factor.
  if (prior.empty()) {
    std::optional<FiniteGrid> chosen;
    for (unsigned m = 1; m <= policy.v1_max_rung && !chosen; ++m) {
      FiniteGrid cand = dyadic_grid(m);
      bool ok = true;
      for (auto n : pool) ok = ok && has_radial_contour_factor(truncate(f(start, n), cand));
      if (ok) chosen = cand;
    }
    require(chosen.has_value(), ErrorKind::DiameterGuardFailed, "no dyadic V'_1 up to the configured rung");
    st.V_prime_k = *chosen;
  } else {
    st.V_prime_k = prior.back().V_prime_k2;
  }

  Rational lip(1);
  for (const auto& p : prior) lip = max(lip, max_abs_slope(p.s_bridge));
  st.eps_k = delta_k / lip;

  // Property (b): the closed gaps of V_k have images of diameter < eps_k
  // under every F_j^k, j odd and j ≤ k.
  std::vector<PLMap> Fjk;
  {
    PLMap acc = PLMap::identity();
    Fjk.push_back(acc);
    for (auto it = prior.rbegin(); it != prior.rend(); ++it) {
      acc = compose(it->F_k, compose(it->F_k1, acc));
      Fjk.push_back(acc);
    }
  }
  auto property_b = [&](const FiniteGrid& W) {
    std::vector<Rational> pts{Rational(-1)};
    pts.insert(pts.end(), W.points().begin(), W.points().end());
    pts.push_back(Rational(1));
    sort_unique(pts);
    for (const auto& F : Fjk)
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        IntervalQ im = *image(F, pts[i], pts[i + 1], false, false);
        if (!(im.hi - im.lo < st.eps_k)) return false;
      }
    return true;
  };

  std::vector<PLMap> family;
  for (auto n : pool) family.push_back(f(start, n));
  LadderResult lad = select_V_and_subfamily(family, st.V_prime_k, delta_k, policy.ladder, property_b);
  st.V_k = lad.W;
  st.t_k = lad.t;
  std::vector<std::size_t> Jp = detail::members_of(pool, lad.members);

  std::size_t jk1 = Jp.front();
  st.F_k = f(start, jk1);
  st.V_k1 = preimage_finite(st.F_k, st.V_k);

  std::vector<std::size_t> rest(Jp.begin() + 1, Jp.end());
  require(!rest.empty(), ErrorKind::WindowTooShort, "no index left after J_k(k+1)");
  std::vector<std::size_t> Jpp;
  detail::group_over(table, jk1 - start + 1, [&] {
    std::vector<std::size_t> v;
    for (auto n : rest) v.push_back(n - start + 1);
    return v;
  }(), st.V_k1, Jpp);
  for (auto& n : Jpp) n += start - 1;
  std::size_t jk2 = Jpp.front();
  st.F_k1 = f(jk1, jk2);
  st.V_prime_k2 = preimage_finite(st.F_k1, st.V_k1);

  std::vector<std::size_t> rest2(Jpp.begin() + 1, Jpp.end());
  require(!rest2.empty(), ErrorKind::WindowTooShort, "no index left after J_k(k+2)");
  std::vector<std::size_t> Jppp;
  ContourGroup g3 = detail::group_over(table, jk2 - start + 1, [&] {
    std::vector<std::size_t> v;
    for (auto n : rest2) v.push_back(n - start + 1);
    return v;
  }(), st.V_prime_k2, Jppp);
  for (auto& n : Jppp) n += start - 1;
  st.t_prime_k2 = g3.factor;

  st.J = {start, jk1, jk2};
  st.J.insert(st.J.end(), Jppp.begin(), Jppp.end());
  std::size_t jk3 = Jppp.front();

  st.G_k = truncate(st.F_k, st.V_k);
  st.G_k1 = truncate(st.F_k1, st.V_k1);
  st.f3 = truncate(f(jk2, jk3), st.V_prime_k2);
  BridgeResult br = bridged_s(st.G_k, st.G_k1, st.f3, policy.max_nodes);
  st.s_bridge = br.s;
  st.bridge_nodes = br.explored;
  assert_stage(st);
  return st;
}

struct ClaimReport {
  MioReport claim1;
  std::optional<MioReport> claim2;  // needs at least two stages
  std::vector<std::pair<std::size_t, Census>> claim3;  // (k, census of γ_k)
  bool claim3_pass = true;
  std::optional<std::pair<Rational, Rational>> claim3_witness;  // a negative value pair
  std::size_t window = 0;
  bool pass() const { return claim1.pass && (!claim2 || claim2->pass) && claim3_pass; }
};

/// Re-derives the claim systems from the stages and checks them exactly.
inline ClaimReport verify_claims(const InverseSystemPrefix&, const std::vector<StageState>& stages) {
  require(!stages.empty(), ErrorKind::PreconditionViolated, "no stages to verify");
  ClaimReport r;
  r.window = stages.front().window;
  InverseSystemPrefix rowF, rowG;
  std::vector<Rational> eps, delta;
  for (const auto& st : stages) {
    rowF.maps.push_back(compose(st.F_k, st.F_k1));
    rowG.maps.push_back(compose(truncate(st.F_k, st.V_k), truncate(st.F_k1, st.V_k1)));
    eps.push_back(st.eps_k);
    delta.push_back(st.delta_k);
  }
  r.claim1 = mioduszewski_report(rowF, rowG, eps);

  InverseSystemPrefix phi, gamma;
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    const auto& st = stages[i];
    const auto& next = stages[i + 1];
    phi.maps.push_back(compose(st.s_bridge, next.t_k));
    gamma.maps.push_back(compose(st.s_bridge, truncate(next.t_k, st.V_prime_k2)));
  }
  if (!phi.maps.empty()) {
    std::vector<Rational> d(delta.begin(), delta.begin() + static_cast<long>(phi.maps.size()));
    r.claim2 = mioduszewski_report(phi, gamma, d);
  }
  for (std::size_t i = 0; i < gamma.maps.size(); ++i) {
    RadialDepartures rd(gamma.maps[i]);
    Census c = rd.census();
    r.claim3.emplace_back(stages[i].k, c);
    if (!no_negative(c)) {
      r.claim3_pass = false;
      if (!r.claim3_witness) {
        auto [a, b] = rd.negative().front();
        r.claim3_witness = std::make_pair(rd.representatives()[a], rd.representatives()[b]);
      }
    }
  }
  return r;
}

}  // namespace plic
