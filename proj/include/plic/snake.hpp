#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plic/radial.hpp"
#include "plic/svg.hpp"
#include "plic/systems.hpp"

namespace plic {

struct SnakeSpec {
  InverseSystemPrefix system;
  std::size_t depth = 3;
  std::vector<Rational> tube_widths;  // empty: default schedule
  bool reflect_left = false;
  std::size_t subdivisions = 2;
};

struct SnakeResult {
  std::vector<Point> polyline;
  std::vector<Rational> tube_widths;
  Point marked;
  bool simple = false;
  bool nested = false;
  bool access_clear = false;
  std::string access_side;
  std::optional<Rational> kappa;
  std::string svg;
};

inline constexpr std::size_t kMaxSnakeDepth = 6;

namespace geom {

inline Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool on_segment(const Point& p, const Point& a, const Point& b) {
  return min(a.x, b.x) <= p.x && p.x <= max(a.x, b.x) && min(a.y, b.y) <= p.y && p.y <= max(a.y, b.y);
}

inline bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  int d1 = cross(c, d, a).sign(), d2 = cross(c, d, b).sign();
  int d3 = cross(a, b, c).sign(), d4 = cross(a, b, d).sign();
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

// Consecutive segments ab, bc overlap beyond b iff they are collinear and fold back.
inline bool folds_back(const Point& a, const Point& b, const Point& c) {
  if (cross(a, b, c).sign() != 0) return false;
  return ((a.x - b.x) * (c.x - b.x) + (a.y - b.y) * (c.y - b.y)).sign() > 0;
}

/// Exact simplicity of an open polyline; repeated consecutive vertices count as violations.
inline bool is_simple(const std::vector<Point>& p) {
  std::size_t n = p.size();
  if (n < 2) return true;
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (p[i] == p[i + 1]) return false;
  for (std::size_t i = 0; i + 2 < n; ++i)
    if (folds_back(p[i], p[i + 1], p[i + 2])) return false;
  struct Seg {
    Rational lo, hi;
    std::size_t i;
  };
  std::vector<Seg> segs;
  for (std::size_t i = 0; i + 1 < n; ++i) segs.push_back({min(p[i].x, p[i + 1].x), max(p[i].x, p[i + 1].x), i});
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo || (a.lo == b.lo && a.i < b.i); });
  for (std::size_t a = 0; a < segs.size(); ++a)
    for (std::size_t b = a + 1; b < segs.size() && segs[b].lo <= segs[a].hi; ++b) {
      std::size_t i = segs[a].i, j = segs[b].i;
      if (i > j) std::swap(i, j);
      if (j == i + 1) continue;
      if (segments_intersect(p[i], p[i + 1], p[j], p[j + 1])) return false;
    }
  return true;
}

/// Whether the segment from `from` to p[k] meets the polyline only at p[k].
inline bool access_clear(const std::vector<Point>& p, std::size_t k, const Point& from) {
  const Point& target = p[k];
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!segments_intersect(from, target, p[i], p[i + 1])) continue;
    bool incident = i == k || i + 1 == k;
    if (!incident) return false;
    const Point& other = i == k ? p[i + 1] : p[i];
    // Incident segments may touch only at the target.
    if (cross(from, target, other).sign() == 0 && on_segment(other, from, target)) return false;
    if (cross(from, target, other).sign() == 0 &&
        ((other.x - target.x) * (from.x - target.x) + (other.y - target.y) * (from.y - target.y)).sign() > 0)
      return false;
  }
  return true;
}

}  // namespace geom

namespace detail {

// A stage polyline parametrized by its coordinate in [-1,1], linear between
// consecutive parameters, with offset directions at the vertices.
struct Strand {
  std::vector<Rational> params;
  std::vector<Point> points;
  std::vector<Point> offsets;

  std::size_t segment_of(const Rational& v) const {
    auto it = std::upper_bound(params.begin(), params.end(), v);
    std::size_t i = it == params.begin() ? 0 : static_cast<std::size_t>(it - params.begin()) - 1;
    return std::min(i, params.size() - 2);
  }
  static Point lerp(const Point& a, const Point& b, const Rational& s) {
    return {a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
  }
  std::pair<Point, Point> at(const Rational& v) const {
    std::size_t i = segment_of(v);
    Rational s = (v - params[i]) / (params[i + 1] - params[i]);
    return {lerp(points[i], points[i + 1], s), lerp(offsets[i], offsets[i + 1], s)};
  }
};

inline Point normal_of(const Point& a, const Point& b) {
  Rational dx = b.x - a.x, dy = b.y - a.y;
  Rational len = max(abs(dx), abs(dy));
  return {-dy / len, dx / len};
}

// m with n_a·m = 1 and n_b·m = 1: the join of the two offset lines.
inline Point miter(const Point& na, const Point& nb) {
  Rational det = na.x * nb.y - na.y * nb.x;
  if (det.is_zero()) {
    Rational dot = na.x * nb.x + na.y * nb.y;
    require(dot.sign() > 0, ErrorKind::SimplicityViolated, "stage polyline reverses direction");
    Rational nn = na.x * na.x + na.y * na.y;
    return {na.x / nn, na.y / nn};
  }
  return {(nb.y - na.y) / det, (na.x - nb.x) / det};
}

inline void assign_offsets(Strand& s) {
  std::size_t n = s.points.size();
  std::vector<Point> normals;
  for (std::size_t i = 0; i + 1 < n; ++i) normals.push_back(normal_of(s.points[i], s.points[i + 1]));
  s.offsets.clear();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& na = normals[i == 0 ? 0 : i - 1];
    const Point& nb = normals[i + 1 == n ? n - 2 : i];
    s.offsets.push_back(miter(na, nb));
  }
}

inline Rational sup_norm(const Point& p) { return max(abs(p.x), abs(p.y)); }

}  // namespace detail

/// Default schedule: w_0 = 1, w_{k+1} = w_k / (4 · max(1, slope of f_1^{k+1})).
inline std::vector<Rational> default_tube_widths(const InverseSystemPrefix& sys, std::size_t depth) {
  std::vector<Rational> w{Rational(1)};
  PLMap acc = PLMap::identity();
  for (std::size_t k = 0; k + 1 < depth; ++k) {
    if (k > 0) acc = compose(acc, sys.at(k));
    w.push_back(w.back() / (Rational(4) * max(Rational(1), max_abs_slope(acc))));
  }
  return w;
}

/// Nested-tube polyline approximating the inverse limit to the given depth.
inline SnakeResult snake_embedding(const SnakeSpec& spec) {
  const auto& sys = spec.system;
  require(spec.depth >= 1 && spec.depth <= kMaxSnakeDepth, ErrorKind::PreconditionViolated,
          "depth must be in [1, " + std::to_string(kMaxSnakeDepth) + "]");
  require(sys.length() + 1 >= spec.depth, ErrorKind::PreconditionViolated,
          "depth " + std::to_string(spec.depth) + " needs " + std::to_string(spec.depth - 1) + " bonding maps");
  SnakeResult out;
  out.tube_widths = spec.tube_widths.empty() ? default_tube_widths(sys, spec.depth) : spec.tube_widths;
  const auto& w = out.tube_widths;
  require(w.size() == spec.depth, ErrorKind::LengthMismatch, "need one tube width per stage");
  {
    PLMap acc = PLMap::identity();
    for (std::size_t k = 0; k + 1 < spec.depth; ++k) {
      if (k > 0) acc = compose(acc, sys.at(k));
      require(w[k + 1] < w[k], ErrorKind::PreconditionViolated, "tube widths must strictly decrease");
      require(w[k + 1] * max_abs_slope(acc) <= w[k] / Rational(4), ErrorKind::PreconditionViolated,
              "nesting guard fails at stage " + std::to_string(k + 1));
    }
  }
  if (spec.reflect_left) {
    bool all_nonneg = true, all_nonpos = true;
    PLMap acc = PLMap::identity();
    for (std::size_t k = 1; k < spec.depth; ++k) {
      acc = compose(acc, sys.at(k));
      Census c = orientation_census(acc);
      all_nonneg = all_nonneg && no_negative(c);
      all_nonpos = all_nonpos && (c == Census::None || c == Census::AllNegative);
    }
    require(all_nonneg || all_nonpos, ErrorKind::MixedOrientations,
            "reflect_left needs every composed bonding map to have uniform radial departures");
  }

  std::vector<Rational> kappas{Rational(1)};
  if (spec.reflect_left)
    for (auto k : {Rational(1, 2), Rational(2), Rational(1, 3), Rational(3), Rational(1, 5), Rational(5)}) kappas.push_back(k);

  for (const auto& kappa : kappas) {
    auto sigma = [&](const Rational& u) { return spec.reflect_left && u.sign() < 0 ? -kappa * u : u; };
    detail::Strand cur{{Rational(-1), Rational(1)}, {{Rational(0), Rational(-1)}, {Rational(0), Rational(1)}}, {}};
    bool ok = true;
    bool nested = true;
    for (std::size_t n = 1; n < spec.depth && ok; ++n) {
      try {
        detail::assign_offsets(cur);
      } catch (const Error&) {
        ok = false;
        break;
      }
      const PLMap& f = sys.at(n);
      std::vector<Rational> us = breakpoint_abscissae(f);
      for (const auto& v : cur.params)
        for (const auto& x : crossings(f, v)) us.push_back(x);
      us.push_back(Rational(0));
      sort_unique(us);
      std::vector<Rational> fine;
      for (std::size_t i = 0; i + 1 < us.size(); ++i)
        for (std::size_t s = 0; s < spec.subdivisions; ++s)
          fine.push_back(us[i] + (us[i + 1] - us[i]) * Rational(static_cast<long>(s), static_cast<long>(spec.subdivisions)));
      fine.push_back(us.back());
      Rational bound(0);
      for (const auto& m : cur.offsets) bound = max(bound, detail::sup_norm(m));
      bound = bound * w[n] * max(Rational(1), kappa);
      detail::Strand next;
      std::optional<Rational> prev_v;
      for (const auto& u : fine) {
        Rational v = f(u);
        auto [p, m] = cur.at(v);
        Point q{p.x + w[n] * sigma(u) * m.x, p.y + w[n] * sigma(u) * m.y};
        nested = nested && detail::sup_norm({q.x - p.x, q.y - p.y}) <= bound;
        next.params.push_back(u);
        next.points.push_back(q);
        // consecutive vertices lie over one segment of the previous stage
        if (prev_v) {
          Rational lo = min(*prev_v, v), hi = max(*prev_v, v);
          auto it = std::upper_bound(cur.params.begin(), cur.params.end(), lo);
          nested = nested && (it == cur.params.end() || *it >= hi);
        }
        prev_v = v;
      }
      cur = std::move(next);
      ok = geom::is_simple(cur.points);
    }
    if (!ok) continue;
    out.polyline = cur.points;
    std::size_t k0 = static_cast<std::size_t>(std::lower_bound(cur.params.begin(), cur.params.end(), Rational(0)) -
                                              cur.params.begin());
    out.marked = cur.points[k0];
    out.simple = true;
    out.nested = nested;
    Rational xmin = out.marked.x, xmax = out.marked.x;
    for (const auto& p : out.polyline) {
      xmin = min(xmin, p.x);
      xmax = max(xmax, p.x);
    }
    Point from_left{xmin - Rational(1, 10), out.marked.y}, from_right{xmax + Rational(1, 10), out.marked.y};
    if (geom::access_clear(out.polyline, k0, from_left)) {
      out.access_clear = true;
      out.access_side = "left";
    } else if (geom::access_clear(out.polyline, k0, from_right)) {
      out.access_clear = true;
      out.access_side = "right";
    }
    if (spec.reflect_left) out.kappa = kappa;

    Rational ymin = out.marked.y, ymax = out.marked.y;
    for (const auto& p : out.polyline) {
      ymin = min(ymin, p.y);
      ymax = max(ymax, p.y);
    }
    Point access_from = out.access_side == "right" ? from_right : from_left;
    xmin = min(xmin, access_from.x);
    xmax = max(xmax, access_from.x);
    Rational side = max(xmax - xmin, ymax - ymin);
    svg::Frame fr{(xmin + xmax) / Rational(2) - side / Rational(2), (ymin + ymax) / Rational(2) - side / Rational(2), side};
    std::ostringstream o;
    o << svg::header();
    o << svg::polyline(out.polyline, fr, kPalette[0], false, "1");
    if (out.access_clear) o << svg::line(access_from, out.marked, fr, kPalette[1], " stroke-width=\"1\" stroke-dasharray=\"4 2\"");
    o << svg::marker({out.marked, ""}, fr);
    o << "</svg>\n";
    out.svg = o.str();
    return out;
  }
  fail(ErrorKind::SimplicityViolated, spec.reflect_left ? "no reflection factor gave a simple polyline"
                                                        : "stage polyline self-intersects");
}

}  // namespace plic
