#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plic/contour.hpp"

namespace plic {

enum class Census { None, AllPositive, AllNegative, Mixed };

inline std::string to_string(Census c) {
  switch (c) {
    case Census::None: return "none";
    case Census::AllPositive: return "all_positive";
    case Census::AllNegative: return "all_negative";
    case Census::Mixed: return "mixed";
  }
  return "unknown";
}

inline bool census_uniform(Census c) { return c != Census::Mixed; }
inline bool no_negative(Census c) { return c == Census::None || c == Census::AllPositive; }

namespace detail {

// Data about one half of a map, read as a map S on [0,1] with S(0) = 0, at a
// value v: whether v is reached, and the extremes of S over [0, hit(v)].
struct HalfAt {
  bool reached = false;
  Rational low;
  Rational high;
};

inline HalfAt half_at(const PLMap& S, const Rational& v) {
  HalfAt out;
  Rational lo(0), hi(0);
  const auto& p = S.breakpoints();
  if (v.is_zero()) return {true, lo, hi};
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto& b = p[i + 1];
    bool hits = (v > Rational(0)) ? b.y >= v : b.y <= v;
    if (hits) {
      out.reached = true;
      out.low = min(lo, v);
      out.high = max(hi, v);
      return out;
    }
    lo = min(lo, b.y);
    hi = max(hi, b.y);
  }
  return out;
}

}  // namespace detail

/// Finite description of the radial departure value pairs (f(x1), f(x2)) of
/// a map on [-1,1] fixing 0. Membership is constant on products of the cells
/// cut out by the critical values, so the sets are stored per cell pair.
class RadialDepartures {
 public:
  explicit RadialDepartures(const PLMap& f, std::vector<Rational> extra_critical = {})
      : left_(left_reflected(f)), right_(right_half(f)) {
    require(f(Rational(0)).is_zero(), ErrorKind::FixedPointViolated,
            "f(0) = " + f(Rational(0)).str() + ", expected 0");
    critical_ = critical_values(f);
    critical_.insert(critical_.end(), extra_critical.begin(), extra_critical.end());
    sort_unique(critical_);
    reps_ = cell_representatives(critical_);
    for (const auto& v : reps_) {
      lat_.push_back(detail::half_at(left_, v));
      rat_.push_back(detail::half_at(right_, v));
    }
    for (std::size_t i = 0; i < reps_.size(); ++i)
      for (std::size_t j = 0; j < reps_.size(); ++j) {
        if (positive_at(i, j)) positive_.emplace_back(i, j);
        if (negative_at(i, j)) negative_.emplace_back(i, j);
      }
  }

  const std::vector<Rational>& critical() const { return critical_; }
  const std::vector<Rational>& representatives() const { return reps_; }
  /// Index pairs into representatives() for (y1, y2).
  const std::vector<std::pair<std::size_t, std::size_t>>& positive() const { return positive_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& negative() const { return negative_; }

  /// Whether some radial departure of the given orientation realizes (y1, y2).
  bool realizes(Orientation o, const Rational& y1, const Rational& y2) const {
    auto l = detail::half_at(left_, y1);
    auto r = detail::half_at(right_, y2);
    return o == Orientation::Positive ? positive_rule(y1, y2, l, r) : negative_rule(y1, y2, l, r);
  }

  Census census() const {
    bool p = !positive_.empty(), n = !negative_.empty();
    if (p && n) return Census::Mixed;
    if (p) return Census::AllPositive;
    if (n) return Census::AllNegative;
    return Census::None;
  }

 private:
  static bool positive_rule(const Rational& y1, const Rational& y2, const detail::HalfAt& l,
                            const detail::HalfAt& r) {
    return y1 < Rational(0) && y2 > Rational(0) && l.reached && r.reached && l.high < y2 && r.low > y1;
  }
  static bool negative_rule(const Rational& y1, const Rational& y2, const detail::HalfAt& l,
                            const detail::HalfAt& r) {
    return y1 > Rational(0) && y2 < Rational(0) && l.reached && r.reached && r.high < y1 && l.low > y2;
  }
  bool positive_at(std::size_t i, std::size_t j) const { return positive_rule(reps_[i], reps_[j], lat_[i], rat_[j]); }
  bool negative_at(std::size_t i, std::size_t j) const { return negative_rule(reps_[i], reps_[j], lat_[i], rat_[j]); }

  PLMap left_;
  PLMap right_;
  std::vector<Rational> critical_;
  std::vector<Rational> reps_;
  std::vector<detail::HalfAt> lat_;
  std::vector<detail::HalfAt> rat_;
  std::vector<std::pair<std::size_t, std::size_t>> positive_;
  std::vector<std::pair<std::size_t, std::size_t>> negative_;
};

inline RadialDepartures radial_departures(const PLMap& f) { return RadialDepartures(f); }

inline Census orientation_census(const PLMap& f) { return RadialDepartures(f).census(); }

/// The two maps realize the same value pairs for both orientations.
inline bool same_radial_departures(const PLMap& f, const PLMap& g) {
  auto crit = critical_values(f);
  auto cg = critical_values(g);
  crit.insert(crit.end(), cg.begin(), cg.end());
  RadialDepartures rf(f, crit), rg(g, crit);
  return rf.positive() == rg.positive() && rf.negative() == rg.negative();
}

enum class PairKind { NotDeparture, Positive, Negative };

inline std::string to_string(PairKind k) {
  switch (k) {
    case PairKind::NotDeparture: return "not_departure";
    case PairKind::Positive: return "positive";
    case PairKind::Negative: return "negative";
  }
  return "unknown";
}

inline PairKind flip(PairKind k) {
  if (k == PairKind::Positive) return PairKind::Negative;
  if (k == PairKind::Negative) return PairKind::Positive;
  return k;
}

/// Classifies ⟨x1, x2⟩ directly: the open interval must map onto the open
/// interval between the endpoint values.
inline PairKind classify_pair(const PLMap& f, const Rational& x1, const Rational& x2) {
  require(x1 < Rational(0) && Rational(0) < x2, ErrorKind::OrderViolated,
          "need x1 < 0 < x2, got " + x1.str() + ", " + x2.str());
  require(f(Rational(0)).is_zero(), ErrorKind::FixedPointViolated, "f(0) != 0");
  Rational y1 = f(x1), y2 = f(x2);
  auto img = *image(f, x1, x2, true, true);
  if (y1 < y2 && img == IntervalQ::open(y1, y2)) return PairKind::Positive;
  if (y2 < y1 && img == IntervalQ::open(y2, y1)) return PairKind::Negative;
  return PairKind::NotDeparture;
}

struct CompDepResult {
  PairKind direct;
  PairKind via_clause;
  int clause;  // 1, 2, or 0 when g has no radial departure at the pair
  bool agree;
};

/// Classifies ⟨x1, x2⟩ for f∘g both on the composite and through the
/// behaviour of g at the pair and of f at its image.
inline CompDepResult comp_dep_check(const PLMap& f, const PLMap& g, const Rational& x1, const Rational& x2) {
  require(x1 < Rational(0) && Rational(0) < x2, ErrorKind::OrderViolated,
          "need x1 < 0 < x2, got " + x1.str() + ", " + x2.str());
  require(f(Rational(0)).is_zero() && g(Rational(0)).is_zero(), ErrorKind::FixedPointViolated,
          "both maps must fix 0");
  CompDepResult out{classify_pair(compose(f, g), x1, x2), PairKind::NotDeparture, 0, false};
  PairKind inner = classify_pair(g, x1, x2);
  if (inner == PairKind::Positive) {
    out.clause = 1;
    out.via_clause = classify_pair(f, g(x1), g(x2));
  } else if (inner == PairKind::Negative) {
    out.clause = 2;
    out.via_clause = flip(classify_pair(f, g(x2), g(x1)));
  }
  out.agree = out.direct == out.via_clause;
  return out;
}

}  // namespace plic
