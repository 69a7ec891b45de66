#pragma once

#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plic/radial.hpp"

namespace plic {

struct FoldChoice {
  Rational abscissa;
  std::size_t lap;
  friend bool operator==(const FoldChoice&, const FoldChoice&) = default;
};

struct LiftCertificate {
  PLMap s;
  std::vector<FoldChoice> fold_choices;
};

/// Layered graph of all continuous PL lifts s with t∘s = target. Layer i
/// holds the points of t^{-1}(target(x_i)) for the candidate abscissae x_i;
/// s is linear between candidates, so every lift is a path through layers.
class LiftGraph {
 public:
  struct Edge {
    std::size_t to;
    std::size_t lap;  // t-segment used, or kStay on constant pieces
  };
  static constexpr std::size_t kStay = static_cast<std::size_t>(-1);

  LiftGraph(const PLMap& t, const PLMap& target) : t_(t), target_(target) {
    require(is_nowhere_constant(t), ErrorKind::PreconditionViolated, "lift needs a nowhere constant t");
    IntervalQ tr = range(t);
    xs_ = breakpoint_abscissae(target);
    if (target.in_domain(Rational(0))) xs_.push_back(Rational(0));
    for (const auto& y : breakpoint_values(t)) {
      auto c = crossings(target, y);
      xs_.insert(xs_.end(), c.begin(), c.end());
    }
    sort_unique(xs_);
    for (const auto& x : xs_) {
      Rational v = target(x);
      require(tr.contains(v), ErrorKind::NoLift,
              "target value " + v.str() + " at " + x.str() + " leaves the range of t");
      nodes_.push_back(crossings(t, v));
    }
    const auto& tp = t.breakpoints();
    right_.resize(xs_.size());
    left_.resize(xs_.size());
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      right_[i].resize(nodes_[i].size());
      left_[i + 1].resize(nodes_[i + 1].size());
      Rational a = target(xs_[i]), b = target(xs_[i + 1]);
      if (a == b) {
        for (std::size_t k = 0; k < nodes_[i].size(); ++k) link(i, k, k, kStay);
        continue;
      }
      Rational lo = min(a, b), hi = max(a, b);
      for (std::size_t seg = 0; seg + 1 < tp.size(); ++seg) {
        Rational ylo = min(tp[seg].y, tp[seg + 1].y), yhi = max(tp[seg].y, tp[seg + 1].y);
        if (ylo > lo || yhi < hi) continue;
        Rational p = solve(seg, a), q = solve(seg, b);
        link(i, index_of(i, p), index_of(i + 1, q), seg);
      }
    }
  }

  const std::vector<Rational>& abscissae() const { return xs_; }
  const std::vector<std::vector<Rational>>& nodes() const { return nodes_; }

  std::optional<std::size_t> anchor_layer() const {
    for (std::size_t i = 0; i < xs_.size(); ++i)
      if (xs_[i].is_zero()) return i;
    return std::nullopt;
  }

  /// Enumerates lifts in preference order (stay on the current lap, then
  /// lowest lap index), optionally with s(0) = 0. The callback returns true
  /// to stop. Returns false if the node budget ran out first.
  bool enumerate(bool anchor_zero, const std::function<bool(const LiftCertificate&)>& visit,
                 std::size_t max_nodes, std::size_t& explored) const {
    std::size_t n = xs_.size();
    std::size_t start = 0;
    std::vector<std::size_t> start_nodes;
    if (anchor_zero) {
      auto a = anchor_layer();
      require(a.has_value(), ErrorKind::PreconditionViolated, "0 is not in the domain");
      start = *a;
      auto it = std::find(nodes_[start].begin(), nodes_[start].end(), Rational(0));
      require(it != nodes_[start].end(), ErrorKind::NoLift, "t(0) differs from target(0)");
      start_nodes.push_back(static_cast<std::size_t>(it - nodes_[start].begin()));
    } else {
      for (std::size_t k = 0; k < nodes_[0].size(); ++k) start_nodes.push_back(k);
    }
    auto alive_r = reachability(true);
    auto alive_l = reachability(false);

    std::vector<std::size_t> path(n);
    std::vector<FoldChoice> folds;
    bool stopped = false;
    bool exhausted = false;

    // Right walk from `start`, then for each completed right part a left walk.
    std::function<void(std::size_t, std::size_t, std::size_t, bool)> walk =
        [&](std::size_t layer, std::size_t node, std::size_t lap, bool rightward) {
          if (stopped || exhausted) return;
          if (++explored > max_nodes) {
            exhausted = true;
            return;
          }
          path[layer] = node;
          bool at_end = rightward ? layer + 1 == n : layer == 0;
          if (at_end) {
            if (rightward) {
              walk(start, path[start], kStay, false);
            } else {
              stopped = visit(certificate(path, folds));
            }
            return;
          }
          const auto& edges = rightward ? right_[layer][node] : left_[layer][node];
          const auto& alive = rightward ? alive_r : alive_l;
          std::size_t next = rightward ? layer + 1 : layer - 1;
          std::vector<Edge> options;
          for (const auto& e : edges)
            if (alive[next][e.to]) options.push_back(e);
          std::stable_sort(options.begin(), options.end(), [&](const Edge& a, const Edge& b) {
            bool sa = a.lap == lap || a.lap == kStay, sb = b.lap == lap || b.lap == kStay;
            if (sa != sb) return sa;
            return a.lap < b.lap;
          });
          options.erase(std::unique(options.begin(), options.end(),
                                    [](const Edge& a, const Edge& b) { return a.to == b.to; }),
                        options.end());
          for (const auto& e : options) {
            if (options.size() > 1) folds.push_back({xs_[layer], e.lap});
            walk(next, e.to, e.lap == kStay ? lap : e.lap, rightward);
            if (options.size() > 1) folds.pop_back();
            if (stopped || exhausted) return;
          }
        };
    for (auto k : start_nodes) {
      if (!alive_r[start][k] || !alive_l[start][k]) continue;
      walk(start, k, kStay, true);
      if (stopped || exhausted) break;
    }
    return !exhausted;
  }

 private:
  Rational solve(std::size_t seg, const Rational& v) const {
    const auto& a = t_.breakpoints()[seg];
    const auto& b = t_.breakpoints()[seg + 1];
    return a.x + (v - a.y) * (b.x - a.x) / (b.y - a.y);
  }

  std::size_t index_of(std::size_t layer, const Rational& p) const {
    const auto& ns = nodes_[layer];
    auto it = std::find(ns.begin(), ns.end(), p);
    require(it != ns.end(), ErrorKind::InternalInvariant, "lift node missing");
    return static_cast<std::size_t>(it - ns.begin());
  }

  void link(std::size_t i, std::size_t from, std::size_t to, std::size_t lap) {
    right_[i][from].push_back({to, lap});
    left_[i + 1][to].push_back({from, lap});
  }

  std::vector<std::vector<bool>> reachability(bool rightward) const {
    std::size_t n = xs_.size();
    std::vector<std::vector<bool>> alive(n);
    for (std::size_t i = 0; i < n; ++i) alive[i].assign(nodes_[i].size(), false);
    if (rightward) {
      alive[n - 1].assign(nodes_[n - 1].size(), true);
      for (std::size_t i = n - 1; i-- > 0;)
        for (std::size_t k = 0; k < nodes_[i].size(); ++k)
          for (const auto& e : right_[i][k])
            if (alive[i + 1][e.to]) alive[i][k] = true;
    } else {
      alive[0].assign(nodes_[0].size(), true);
      for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < nodes_[i].size(); ++k)
          for (const auto& e : left_[i][k])
            if (alive[i - 1][e.to]) alive[i][k] = true;
    }
    return alive;
  }

  LiftCertificate certificate(const std::vector<std::size_t>& path, std::vector<FoldChoice> folds) const {
    std::vector<Breakpoint> pts;
    for (std::size_t i = 0; i < xs_.size(); ++i) pts.push_back({xs_[i], nodes_[i][path[i]]});
    std::sort(folds.begin(), folds.end(),
              [](const FoldChoice& a, const FoldChoice& b) { return a.abscissa < b.abscissa; });
    return {PLMap(target_.domain(), std::move(pts)), std::move(folds)};
  }

  PLMap t_;
  PLMap target_;
  std::vector<Rational> xs_;
  std::vector<std::vector<Rational>> nodes_;
  std::vector<std::vector<std::vector<Edge>>> right_;
  std::vector<std::vector<std::vector<Edge>>> left_;
};

/// Some continuous PL s with t∘s = target (and s(0) = 0 when both maps fix 0).
inline LiftCertificate lift_through(const PLMap& t, const PLMap& target) {
  LiftGraph graph(t, target);
  bool anchor = target.in_domain(Rational(0)) && t.in_domain(Rational(0)) && t(Rational(0)).is_zero() &&
                target(Rational(0)).is_zero();
  std::optional<LiftCertificate> found;
  std::size_t explored = 0;
  graph.enumerate(anchor, [&](const LiftCertificate& c) { found = c; return true; },
                  static_cast<std::size_t>(-1), explored);
  require(found.has_value(), ErrorKind::NoLift, "no continuous lift of the target through t");
  require(compose(t, found->s) == target, ErrorKind::InternalInvariant, "lift fails t∘s = target");
  return *found;
}

struct Factorization {
  PLMap t;
  PLMap s;
};

/// f = t∘s with t the radial contour factor of f.
inline Factorization factor_contour(const PLMap& f) {
  PLMap t = radial_contour_factor(f);
  try {
    return {t, lift_through(t, f).s};
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NoLift) fail(ErrorKind::InternalInvariant, std::string("contour factor lift: ") + e.what());
    throw;
  }
}

inline std::size_t default_max_nodes() {
  if (const char* env = std::getenv("PLIC_MAX_NODES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

struct BridgeResult {
  PLMap s;
  Census census;
  std::size_t explored = 0;
  std::size_t lifts_checked = 0;
};

/// Searches the lifts of f1∘f2 through t_{f1} for one whose composite with
/// t_{f3} has no negative radial departures.
inline BridgeResult bridged_s(const PLMap& f1, const PLMap& f2, const PLMap& f3,
                              std::size_t max_nodes = default_max_nodes()) {
  for (const PLMap* f : {&f1, &f2, &f3})
    require(has_radial_contour_factor(*f), ErrorKind::PreconditionViolated,
            "input map has no well-defined radial contour factor");
  PLMap f12 = compose(f1, f2), f23 = compose(f2, f3);
  PLMap t1 = radial_contour_factor(f1);
  require(has_radial_contour_factor(f12) && radial_contour_factor(f12) == t1, ErrorKind::HypothesisFailed,
          "t_{f1} differs from t_{f1∘f2}");
  require(has_radial_contour_factor(f23) && radial_contour_factor(f23) == radial_contour_factor(f2),
          ErrorKind::HypothesisFailed, "t_{f2} differs from t_{f2∘f3}");
  PLMap t3 = radial_contour_factor(f3);
  LiftGraph graph(t1, f12);
  std::optional<BridgeResult> found;
  std::size_t explored = 0, checked = 0;
  bool complete = graph.enumerate(true, [&](const LiftCertificate& c) {
    ++checked;
    Census census = orientation_census(compose(c.s, t3));
    if (!no_negative(census)) return false;
    found = BridgeResult{c.s, census, 0, 0};
    return true;
  }, max_nodes, explored);
  if (!found) {
    require(!complete, ErrorKind::SearchExhausted,
            "lift space exhausted without a witness after " + std::to_string(explored) + " nodes");
    fail(ErrorKind::SearchExhausted, "node budget " + std::to_string(max_nodes) + " exhausted after " +
                                         std::to_string(checked) + " lifts");
  }
  require(compose(t1, found->s) == f12, ErrorKind::InternalInvariant, "bridged s fails the factorization");
  found->explored = explored;
  found->lifts_checked = checked;
  return *found;
}

}  // namespace plic
