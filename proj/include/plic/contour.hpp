#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plic/closeness.hpp"
#include "plic/interval.hpp"
#include "plic/pl_map.hpp"

namespace plic {

enum class Orientation { Positive, Negative };

inline std::string to_string(Orientation o) { return o == Orientation::Positive ? "positive" : "negative"; }
inline Orientation opposite(Orientation o) {
  return o == Orientation::Positive ? Orientation::Negative : Orientation::Positive;
}
inline Orientation orientation_of(const Rational& v) {
  require(!v.is_zero(), ErrorKind::InternalInvariant, "zero value has no orientation");
  return v.sign() > 0 ? Orientation::Positive : Orientation::Negative;
}

/// One maximal interval of departures over which the running record extends
/// in a single direction.
struct DepartureRun {
  IntervalQ interval;
  Orientation orientation;
  IntervalQ value_range;
  friend bool operator==(const DepartureRun&, const DepartureRun&) = default;
};

struct DepartureProfile {
  std::vector<DepartureRun> runs;

  bool contains(const Rational& x) const {
    for (const auto& r : runs)
      if (r.interval.contains(x)) return true;
    return false;
  }
};

struct ContourPoint {
  Rational alpha;
  Rational value;
  Orientation orientation;
  friend bool operator==(const ContourPoint&, const ContourPoint&) = default;
};

using ContourData = std::vector<ContourPoint>;

inline void require_unit_fixing_zero(const PLMap& f) {
  require(f.domain() == Domain::Unit, ErrorKind::PreconditionViolated, "expected a map on [0,1]");
  require(f(Rational(0)).is_zero(), ErrorKind::FixedPointViolated,
          "f(0) = " + f(Rational(0)).str() + ", expected 0");
}

inline DepartureProfile departures(const PLMap& f) {
  require_unit_fixing_zero(f);
  DepartureProfile out;
  Rational hi(0), lo(0);
  const auto& p = f.breakpoints();
  auto push = [&out](const Rational& from, const Rational& to, Orientation o, const Rational& v0,
                     const Rational& v1) {
    if (!out.runs.empty() && out.runs.back().orientation == o && out.runs.back().interval.hi == from) {
      auto& r = out.runs.back();
      r.interval.hi = to;
      if (o == Orientation::Positive)
        r.value_range.hi = v1;
      else
        r.value_range.lo = v1;
      return;
    }
    IntervalQ vals = o == Orientation::Positive ? IntervalQ::make(v0, v1, true, false)
                                                : IntervalQ::make(v1, v0, false, true);
    out.runs.push_back({IntervalQ::make(from, to, true, false), o, vals});
  };
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[i + 1];
    if (b.y > hi) {
      Rational c = a.x + (hi - a.y) * (b.x - a.x) / (b.y - a.y);
      push(c, b.x, Orientation::Positive, hi, b.y);
      hi = b.y;
    } else if (b.y < lo) {
      Rational c = a.x + (lo - a.y) * (b.x - a.x) / (b.y - a.y);
      push(c, b.x, Orientation::Negative, lo, b.y);
      lo = b.y;
    }
  }
  return out;
}

inline bool is_departure(const PLMap& f, const Rational& x) {
  require_unit_fixing_zero(f);
  if (x <= Rational(0)) return false;
  auto before = image(f, Rational(0), x, false, true);
  return !before->contains(f(x));
}

inline ContourData contour_points(const PLMap& f) {
  require_unit_fixing_zero(f);
  auto prof = departures(f);
  require(!prof.runs.empty(), ErrorKind::NoDepartures, "map is identically zero");
  ContourData out;
  for (std::size_t i = 0; i < prof.runs.size(); ++i) {
    const auto& r = prof.runs[i];
    bool last_of_block = i + 1 == prof.runs.size() || prof.runs[i + 1].orientation != r.orientation;
    if (last_of_block) out.push_back({r.interval.hi, f(r.interval.hi), r.orientation});
  }
  return out;
}

/// Zigzag through (i/n, f(α_i)) with α_0 = 0.
inline PLMap contour_factor(const PLMap& f) {
  auto cps = contour_points(f);
  std::vector<Rational> values{Rational(0)};
  for (const auto& c : cps) values.push_back(c.value);
  return PLMap::uniform(Domain::Unit, values);
}

enum class Side { Left, Right };
inline std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

inline bool has_radial_contour_factor(const PLMap& f) {
  if (f.domain() != Domain::Symmetric || !f(Rational(0)).is_zero()) return false;
  return !is_constant(right_half(f)) && !is_constant(left_reflected(f));
}

inline PLMap radial_contour_factor(const PLMap& f) {
  require(f.domain() == Domain::Symmetric, ErrorKind::PreconditionViolated, "expected a map on [-1,1]");
  require(f(Rational(0)).is_zero(), ErrorKind::FixedPointViolated,
          "f(0) = " + f(Rational(0)).str() + ", expected 0");
  PLMap r = right_half(f);
  PLMap l = left_reflected(f);
  require(!is_constant(r), ErrorKind::HalfConstant, "right half is constant");
  require(!is_constant(l), ErrorKind::HalfConstant, "left half is constant");
  return glue_halves(contour_factor(r), contour_factor(l));
}

/// First x in [0,1] with f(x) = v.
inline std::optional<Rational> first_hit(const PLMap& f, const Rational& v) {
  auto xs = crossings(f, v);
  if (xs.empty()) return std::nullopt;
  return xs.front();
}

/// f([0,x)) for x > 0.
inline IntervalQ image_before(const PLMap& f, const Rational& x) {
  require(x > Rational(0), ErrorKind::PreconditionViolated, "image_before needs x > 0");
  return *image(f, Rational(0), x, false, true);
}

/// Critical values of a map: breakpoint values together with 0 and ±1.
inline std::vector<Rational> critical_values(const PLMap& f) {
  auto ys = breakpoint_values(f);
  ys.push_back(Rational(0));
  ys.push_back(Rational(-1));
  ys.push_back(Rational(1));
  sort_unique(ys);
  return ys;
}

/// Representatives of the cells cut out of [-1,1] by sorted critical values:
/// each value itself and the midpoint of each gap.
inline std::vector<Rational> cell_representatives(const std::vector<Rational>& crit) {
  std::vector<Rational> reps;
  for (std::size_t i = 0; i < crit.size(); ++i) {
    reps.push_back(crit[i]);
    if (i + 1 < crit.size()) reps.push_back(midpoint(crit[i], crit[i + 1]));
  }
  return reps;
}

enum class ContourMethod { DepartureMatching, ContourMatching, FactorEquality };

inline std::string to_string(ContourMethod m) {
  switch (m) {
    case ContourMethod::DepartureMatching: return "departure_matching";
    case ContourMethod::ContourMatching: return "contour_matching";
    case ContourMethod::FactorEquality: return "factor_equality";
  }
  return "unknown";
}

namespace detail {

// Each departure x of f is the first hit of its value, so the departures are
// indexed by the values in [min f, 0) ∪ (0, max f]. f([0, hit(v))) only
// changes at critical values, which makes cell representatives sufficient.
inline bool departures_matched(const PLMap& f, const PLMap& g) {
  auto crit = critical_values(f);
  auto cg = critical_values(g);
  crit.insert(crit.end(), cg.begin(), cg.end());
  sort_unique(crit);
  for (const auto& v : cell_representatives(crit)) {
    if (v.is_zero()) continue;
    auto xf = first_hit(f, v);
    auto xg = first_hit(g, v);
    if (xf.has_value() != xg.has_value()) return false;
    if (!xf) continue;
    if (image_before(f, *xf) != image_before(g, *xg)) return false;
  }
  return true;
}

inline bool contour_side_matched(const PLMap& f, const PLMap& g) {
  for (const auto& cp : contour_points(f)) {
    IntervalQ target = image_before(f, cp.alpha);
    bool found = false;
    for (const auto& x : crossings(g, cp.value)) {
      if (x > Rational(0) && is_departure(g, x) && image_before(g, x) == target) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

/// Whether f and g on [0,1] have the same contour factor, decided by the
/// chosen characterization.
inline bool same_contour(const PLMap& f, const PLMap& g, ContourMethod method) {
  require_unit_fixing_zero(f);
  require_unit_fixing_zero(g);
  require(!is_constant(f) && !is_constant(g), ErrorKind::PreconditionViolated, "constant map");
  switch (method) {
    case ContourMethod::FactorEquality:
      return contour_factor(f) == contour_factor(g);
    case ContourMethod::DepartureMatching:
      return detail::departures_matched(f, g);
    case ContourMethod::ContourMatching:
      return detail::contour_side_matched(f, g) && detail::contour_side_matched(g, f);
  }
  return false;
}

}  // namespace plic
