#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "plic/pl_map.hpp"

namespace plic {

struct Point {
  Rational x, y;
  friend bool operator==(const Point&, const Point&) = default;
};

inline constexpr const char* kPalette[] = {"#1f4e79", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#2e4053"};
inline constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

struct MapStyle {
  std::size_t color = 0;
  bool dashed = false;
};

struct Annotation {
  Point at;
  std::string label;
};

struct PlotSpec {
  std::vector<std::pair<PLMap, MapStyle>> maps;
  std::vector<FiniteGrid> grids;
  std::vector<Annotation> annotations;
};

namespace svg {

inline constexpr int kSize = 400;

inline std::string num(const Rational& r) { return r.decimal(6); }

/// Affine map from a square world box [lo, lo + side]² to the canvas, y up.
struct Frame {
  Rational lo_x, lo_y, side;
  Rational pad = Rational(20);
  Rational scale() const { return (Rational(kSize) - Rational(2) * pad) / side; }
  Point to_canvas(const Point& p) const {
    return {pad + (p.x - lo_x) * scale(), Rational(kSize) - pad - (p.y - lo_y) * scale()};
  }
};

inline std::string header() {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
    << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
  return o.str();
}

inline std::string polyline(const std::vector<Point>& pts, const Frame& fr, const std::string& stroke, bool dashed,
                            const std::string& width = "1.5") {
  std::ostringstream o;
  o << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"";
  if (dashed) o << " stroke-dasharray=\"6 3\"";
  o << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point c = fr.to_canvas(pts[i]);
    o << (i ? " " : "") << num(c.x) << "," << num(c.y);
  }
  o << "\"/>\n";
  return o.str();
}

inline std::string line(const Point& a, const Point& b, const Frame& fr, const std::string& stroke, const std::string& extra) {
  Point ca = fr.to_canvas(a), cb = fr.to_canvas(b);
  std::ostringstream o;
  o << "<line x1=\"" << num(ca.x) << "\" y1=\"" << num(ca.y) << "\" x2=\"" << num(cb.x) << "\" y2=\"" << num(cb.y)
    << "\" stroke=\"" << stroke << "\"" << extra << "/>\n";
  return o.str();
}

inline std::string marker(const Annotation& a, const Frame& fr) {
  Point c = fr.to_canvas(a.at);
  std::ostringstream o;
  o << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(c.y) << "\" r=\"3\" fill=\"black\"/>\n";
  if (!a.label.empty())
    o << "<text x=\"" << num(c.x + Rational(5)) << "\" y=\"" << num(c.y - Rational(5))
      << "\" font-family=\"monospace\" font-size=\"11\">" << a.label << "</text>\n";
  return o.str();
}

}  // namespace svg

/// Deterministic plot of maps on the square [-1,1]², grids as dotted horizontals.
inline std::string plot_map(const PlotSpec& spec) {
  svg::Frame fr{Rational(-1), Rational(-1), Rational(2)};
  std::ostringstream o;
  o << svg::header();
  o << svg::line({Rational(-1), Rational(0)}, {Rational(1), Rational(0)}, fr, "#999999", " stroke-width=\"0.5\"");
  o << svg::line({Rational(0), Rational(-1)}, {Rational(0), Rational(1)}, fr, "#999999", " stroke-width=\"0.5\"");
  o << svg::polyline({{Rational(-1), Rational(-1)}, {Rational(1), Rational(-1)}, {Rational(1), Rational(1)},
                      {Rational(-1), Rational(1)}, {Rational(-1), Rational(-1)}},
                     fr, "#444444", false, "0.75");
  for (const auto& V : spec.grids)
    for (const auto& v : V.points())
      o << svg::line({Rational(-1), v}, {Rational(1), v}, fr, "#777777", " stroke-width=\"0.75\" stroke-dasharray=\"2 3\"");
  for (const auto& [f, style] : spec.maps) {
    std::vector<Point> pts;
    for (const auto& b : f.breakpoints()) pts.push_back({b.x, b.y});
    o << svg::polyline(pts, fr, kPalette[style.color % kPaletteSize], style.dashed);
  }
  for (const auto& a : spec.annotations) o << svg::marker(a, fr);
  o << "</svg>\n";
  return o.str();
}

}  // namespace plic
