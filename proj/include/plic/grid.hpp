#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "plic/rational.hpp"

namespace plic {

/// Sorted finite subset of [-1,1] without duplicates. An empty grid is a
/// valid value (a preimage can be empty); mesh() rejects it.
class FiniteGrid {
 public:
  FiniteGrid() = default;
  FiniteGrid(std::initializer_list<Rational> pts) : FiniteGrid(std::vector<Rational>(pts)) {}
  explicit FiniteGrid(std::vector<Rational> pts) : points_(std::move(pts)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    for (const auto& p : points_)
      require(p >= Rational(-1) && p <= Rational(1), ErrorKind::OutOfDomain,
              "grid point " + p.str() + " outside [-1,1]");
  }

  const std::vector<Rational>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  bool contains(const Rational& v) const {
    return std::binary_search(points_.begin(), points_.end(), v);
  }

  bool subset_of(const FiniteGrid& o) const {
    return std::includes(o.points_.begin(), o.points_.end(), points_.begin(), points_.end());
  }

  /// Some point of the grid strictly between a and b (either order)?
  bool has_point_strictly_between(const Rational& a, const Rational& b) const {
    const Rational& lo = a < b ? a : b;
    const Rational& hi = a < b ? b : a;
    auto it = std::upper_bound(points_.begin(), points_.end(), lo);
    return it != points_.end() && *it < hi;
  }

  FiniteGrid unite(const FiniteGrid& o) const {
    std::vector<Rational> all = points_;
    all.insert(all.end(), o.points_.begin(), o.points_.end());
    return FiniteGrid(std::move(all));
  }

  FiniteGrid without(const Rational& v) const {
    std::vector<Rational> rest;
    for (const auto& p : points_)
      if (p != v) rest.push_back(p);
    return FiniteGrid(std::move(rest));
  }

  friend bool operator==(const FiniteGrid&, const FiniteGrid&) = default;

  std::string str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (i) out += ", ";
      out += points_[i].str();
    }
    return out + "}";
  }

  friend std::ostream& operator<<(std::ostream& os, const FiniteGrid& g) { return os << g.str(); }

 private:
  std::vector<Rational> points_;
};

/// {j / 2^m : j integer} within [-1,1].
inline FiniteGrid dyadic_grid(unsigned m) {
  long n = 1L << m;
  std::vector<Rational> pts;
  for (long j = -n; j <= n; ++j) pts.emplace_back(j, n);
  return FiniteGrid(std::move(pts));
}

}  // namespace plic
