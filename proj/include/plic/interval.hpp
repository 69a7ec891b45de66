#pragma once

#include <ostream>
#include <string>

#include "plic/rational.hpp"

namespace plic {

/// Interval of rationals with independently open or closed ends.
struct IntervalQ {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;

  static IntervalQ closed(Rational a, Rational b) { return make(std::move(a), std::move(b), false, false); }
  static IntervalQ open(Rational a, Rational b) { return make(std::move(a), std::move(b), true, true); }
  static IntervalQ point(const Rational& a) { return make(a, a, false, false); }

  static IntervalQ make(Rational a, Rational b, bool a_open, bool b_open) {
    require(a <= b, ErrorKind::InternalInvariant, "interval with lo > hi");
    require(a != b || (!a_open && !b_open), ErrorKind::InternalInvariant,
            "degenerate interval must be closed");
    return IntervalQ{std::move(a), std::move(b), a_open, b_open};
  }

  bool degenerate() const { return lo == hi; }

  bool contains(const Rational& v) const {
    if (v < lo || v > hi) return false;
    if (v == lo && lo_open) return false;
    if (v == hi && hi_open) return false;
    return true;
  }

  /// Subset test, exact including endpoint openness.
  bool subset_of(const IntervalQ& o) const {
    bool lo_ok = lo > o.lo || (lo == o.lo && (!o.lo_open || lo_open));
    bool hi_ok = hi < o.hi || (hi == o.hi && (!o.hi_open || hi_open));
    return lo_ok && hi_ok;
  }

  friend bool operator==(const IntervalQ&, const IntervalQ&) = default;

  std::string str() const {
    return std::string(lo_open ? "(" : "[") + lo.str() + "," + hi.str() + (hi_open ? ")" : "]");
  }

  friend std::ostream& operator<<(std::ostream& os, const IntervalQ& iv) { return os << iv.str(); }
};

}  // namespace plic
