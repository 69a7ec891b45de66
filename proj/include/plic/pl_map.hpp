#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "plic/error.hpp"
#include "plic/grid.hpp"
#include "plic/interval.hpp"
#include "plic/rational.hpp"

namespace plic {

enum class Domain { Symmetric, Unit };

inline Rational domain_left(Domain d) { return d == Domain::Symmetric ? Rational(-1) : Rational(0); }
inline Rational domain_right(Domain) { return Rational(1); }
inline std::string domain_str(Domain d) { return d == Domain::Symmetric ? "[-1,1]" : "[0,1]"; }

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Continuous piecewise-linear map from [-1,1] or [0,1] into [-1,1], stored
/// as its canonical breakpoint list (no three consecutive points collinear).
class PLMap {
 public:
  PLMap() : PLMap(Domain::Symmetric, {{Rational(-1), Rational(-1)}, {Rational(1), Rational(1)}}) {}

  PLMap(Domain domain, std::vector<Breakpoint> pts) : domain_(domain), pts_(std::move(pts)) {
    require(pts_.size() >= 2, ErrorKind::ParseError, "a map needs at least two breakpoints");
    require(pts_.front().x == domain_left(domain_) && pts_.back().x == domain_right(domain_),
            ErrorKind::ParseError, "breakpoints must span the domain " + domain_str(domain_));
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (i > 0)
        require(pts_[i - 1].x < pts_[i].x, ErrorKind::ParseError,
                "breakpoint x-coordinates not strictly increasing at index " + std::to_string(i));
      require(pts_[i].y >= Rational(-1) && pts_[i].y <= Rational(1), ErrorKind::OutOfDomain,
              "breakpoint value " + pts_[i].y.str() + " outside [-1,1] at index " + std::to_string(i));
    }
    canonicalize();
  }

  static PLMap identity(Domain d = Domain::Symmetric) {
    return PLMap(d, {{domain_left(d), domain_left(d)}, {Rational(1), Rational(1)}});
  }
  static PLMap negation() { return PLMap(Domain::Symmetric, {{Rational(-1), Rational(1)}, {Rational(1), Rational(-1)}}); }
  static PLMap constant(Domain d, const Rational& v) {
    return PLMap(d, {{domain_left(d), v}, {Rational(1), v}});
  }
  /// Map through (i/n, values[i]) on [0,1], or (-1 + 2i/n, values[i]) on [-1,1].
  static PLMap uniform(Domain d, const std::vector<Rational>& values) {
    require(values.size() >= 2, ErrorKind::ParseError, "need at least two values");
    Rational a = domain_left(d);
    Rational width = Rational(1) - a;
    Rational n(static_cast<long>(values.size() - 1));
    std::vector<Breakpoint> pts;
    for (std::size_t i = 0; i < values.size(); ++i)
      pts.push_back({a + width * Rational(static_cast<long>(i)) / n, values[i]});
    return PLMap(d, std::move(pts));
  }

  Domain domain() const { return domain_; }
  const std::vector<Breakpoint>& breakpoints() const { return pts_; }
  std::size_t size() const { return pts_.size(); }
  std::size_t segments() const { return pts_.size() - 1; }
  Rational left() const { return pts_.front().x; }
  Rational right() const { return pts_.back().x; }

  bool in_domain(const Rational& x) const { return x >= left() && x <= right(); }

  Rational operator()(const Rational& x) const {
    require(in_domain(x), ErrorKind::OutOfDomain,
            x.str() + " outside domain " + domain_str(domain_));
    auto it = std::lower_bound(pts_.begin(), pts_.end(), x,
                               [](const Breakpoint& b, const Rational& v) { return b.x < v; });
    if (it->x == x) return it->y;
    const Breakpoint& b = *it;
    const Breakpoint& a = *(it - 1);
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
  }

  Rational slope(std::size_t seg) const {
    return (pts_[seg + 1].y - pts_[seg].y) / (pts_[seg + 1].x - pts_[seg].x);
  }

  friend bool operator==(const PLMap&, const PLMap&) = default;

  std::string str() const {
    std::string out = domain_str(domain_) + ":";
    for (const auto& b : pts_) out += " (" + b.x.str() + "," + b.y.str() + ")";
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const PLMap& f) { return os << f.str(); }

 private:
  void canonicalize() {
    std::vector<Breakpoint> out;
    out.reserve(pts_.size());
    for (auto& p : pts_) {
      while (out.size() >= 2) {
        const Breakpoint& a = out[out.size() - 2];
        const Breakpoint& b = out.back();
        if ((b.y - a.y) * (p.x - b.x) == (p.y - b.y) * (b.x - a.x))
          out.pop_back();
        else
          break;
      }
      out.push_back(std::move(p));
    }
    pts_ = std::move(out);
  }

  Domain domain_;
  std::vector<Breakpoint> pts_;
};

inline Rational eval(const PLMap& f, const Rational& x) { return f(x); }

/// Solutions of f(x) = c, sorted. Interiors of segments where f is constant
/// at c are skipped; their endpoints are reported.
inline std::vector<Rational> crossings(const PLMap& f, const Rational& c) {
  std::vector<Rational> xs;
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto& a = p[i];
    const auto& b = p[i + 1];
    if (a.y == c) {
      if (xs.empty() || xs.back() != a.x) xs.push_back(a.x);
    } else if ((a.y < c && c < b.y) || (b.y < c && c < a.y)) {
      xs.push_back(a.x + (c - a.y) * (b.x - a.x) / (b.y - a.y));
    }
  }
  if (p.back().y == c && (xs.empty() || xs.back() != p.back().x)) xs.push_back(p.back().x);
  return xs;
}

inline bool is_nowhere_constant(const PLMap& f) {
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i].y == p[i + 1].y) return false;
  return true;
}

inline bool has_plateau_at(const PLMap& f, const Rational& c) {
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i].y == c && p[i + 1].y == c) return true;
  return false;
}

inline bool is_constant(const PLMap& f) { return f.size() == 2 && f.breakpoints()[0].y == f.breakpoints()[1].y; }

inline std::vector<Rational> breakpoint_values(const PLMap& f) {
  std::vector<Rational> ys;
  for (const auto& b : f.breakpoints()) ys.push_back(b.y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return ys;
}

inline std::vector<Rational> breakpoint_abscissae(const PLMap& f) {
  std::vector<Rational> xs;
  for (const auto& b : f.breakpoints()) xs.push_back(b.x);
  return xs;
}

inline void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// f∘g. The result lives on g's domain.
inline PLMap compose(const PLMap& f, const PLMap& g) {
  std::vector<Rational> xs = breakpoint_abscissae(g);
  for (const auto& b : f.breakpoints()) {
    auto c = crossings(g, b.x);
    xs.insert(xs.end(), c.begin(), c.end());
  }
  sort_unique(xs);
  std::vector<Breakpoint> pts;
  pts.reserve(xs.size());
  for (const auto& x : xs) pts.push_back({x, f(g(x))});
  return PLMap(g.domain(), std::move(pts));
}

/// f^{-1}(V) as a finite grid.
inline FiniteGrid preimage_finite(const PLMap& f, const FiniteGrid& V) {
  std::vector<Rational> xs;
  for (const auto& v : V.points()) {
    require(!has_plateau_at(f, v), ErrorKind::InfinitePreimage,
            "map is constant at grid value " + v.str() + " on a segment");
    auto c = crossings(f, v);
    xs.insert(xs.end(), c.begin(), c.end());
  }
  return FiniteGrid(std::move(xs));
}

/// Image of an interval of the domain with chosen open or closed ends.
/// Returns nothing for an empty interval.
inline std::optional<IntervalQ> image(const PLMap& f, const Rational& lo, const Rational& hi,
                                      bool lo_open, bool hi_open) {
  require(f.in_domain(lo) && f.in_domain(hi), ErrorKind::OutOfDomain, "image interval outside domain");
  if (hi < lo) return std::nullopt;
  if (lo == hi) {
    if (lo_open || hi_open) return std::nullopt;
    return IntervalQ::point(f(lo));
  }
  // Attained values: closed ends, interior breakpoints and piece midpoints.
  std::vector<Rational> knots{lo};
  for (const auto& b : f.breakpoints())
    if (b.x > lo && b.x < hi) knots.push_back(b.x);
  knots.push_back(hi);
  Rational mn = f(lo), mx = mn;
  std::vector<Rational> attained;
  if (!lo_open) attained.push_back(f(lo));
  if (!hi_open) attained.push_back(f(hi));
  for (std::size_t i = 0; i < knots.size(); ++i) {
    Rational v = f(knots[i]);
    mn = min(mn, v);
    mx = max(mx, v);
    if (i > 0 && i + 1 < knots.size()) attained.push_back(v);
    if (i + 1 < knots.size()) attained.push_back(f(midpoint(knots[i], knots[i + 1])));
  }
  bool has_min = std::find(attained.begin(), attained.end(), mn) != attained.end();
  bool has_max = std::find(attained.begin(), attained.end(), mx) != attained.end();
  return IntervalQ::make(mn, mx, !has_min, !has_max);
}

inline IntervalQ range(const PLMap& f) { return *image(f, f.left(), f.right(), false, false); }

inline Rational max_abs_slope(const PLMap& f) {
  Rational m(0);
  for (std::size_t i = 0; i < f.segments(); ++i) m = max(m, abs(f.slope(i)));
  return m;
}

/// f restricted to [0,1].
inline PLMap right_half(const PLMap& f) {
  require(f.domain() == Domain::Symmetric, ErrorKind::PreconditionViolated, "right_half needs a map on [-1,1]");
  std::vector<Breakpoint> pts{{Rational(0), f(Rational(0))}};
  for (const auto& b : f.breakpoints())
    if (b.x > Rational(0)) pts.push_back(b);
  return PLMap(Domain::Unit, std::move(pts));
}

/// x ↦ f(-x) on [0,1].
inline PLMap left_reflected(const PLMap& f) {
  require(f.domain() == Domain::Symmetric, ErrorKind::PreconditionViolated, "left_reflected needs a map on [-1,1]");
  std::vector<Breakpoint> pts{{Rational(0), f(Rational(0))}};
  const auto& p = f.breakpoints();
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    if (it->x < Rational(0)) pts.push_back({-it->x, it->y});
  return PLMap(Domain::Unit, std::move(pts));
}

/// Inverse of left_reflected/right_half: the map on [-1,1] equal to `right`
/// on [0,1] and to x ↦ left(-x) on [-1,0].
inline PLMap glue_halves(const PLMap& right, const PLMap& left) {
  require(right.domain() == Domain::Unit && left.domain() == Domain::Unit, ErrorKind::PreconditionViolated,
          "glue_halves needs two maps on [0,1]");
  require(right(Rational(0)) == left(Rational(0)), ErrorKind::PreconditionViolated,
          "halves disagree at 0");
  std::vector<Breakpoint> pts;
  const auto& l = left.breakpoints();
  for (auto it = l.rbegin(); it != l.rend(); ++it)
    if (it->x > Rational(0)) pts.push_back({-it->x, it->y});
  for (const auto& b : right.breakpoints()) pts.push_back(b);
  return PLMap(Domain::Symmetric, std::move(pts));
}

inline bool is_homeomorphism(const PLMap& h) {
  if (h.domain() != Domain::Symmetric) return false;
  const auto& p = h.breakpoints();
  bool inc = p[1].y > p[0].y;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if ((p[i + 1].y > p[i].y) != inc || p[i + 1].y == p[i].y) return false;
  return (inc && p.front().y == Rational(-1) && p.back().y == Rational(1)) ||
         (!inc && p.front().y == Rational(1) && p.back().y == Rational(-1));
}

inline PLMap inverse(const PLMap& h) {
  require(is_homeomorphism(h), ErrorKind::NotHomeomorphism, "map is not a PL homeomorphism of [-1,1]");
  std::vector<Breakpoint> pts;
  for (const auto& b : h.breakpoints()) pts.push_back({b.y, b.x});
  std::sort(pts.begin(), pts.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.x < b.x; });
  return PLMap(Domain::Symmetric, std::move(pts));
}

/// h_out ∘ f ∘ h_in^{-1}.
inline PLMap conjugate(const PLMap& f, const PLMap& h_out, const PLMap& h_in) {
  require(is_homeomorphism(h_out), ErrorKind::NotHomeomorphism, "h_out is not a PL homeomorphism");
  return compose(h_out, compose(f, inverse(h_in)));
}

}  // namespace plic
