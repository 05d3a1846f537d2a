#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "atilde.hpp"
#include "cone.hpp"
#include "rat.hpp"

namespace stabfan {

// Small SVG canvas with a centered math-coordinate viewport (y up).
// Figures are illustrative; all certified data lives in the JSON output,
// so double precision is fine here.
class SvgCanvas {
 public:
  SvgCanvas(double half_extent, int pixels = 480)
      : half_(half_extent), px_(pixels) {
    body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_
          << "\" height=\"" << px_ << "\" viewBox=\"0 0 " << px_ << " " << px_
          << "\">\n";
    body_ << "<rect width=\"" << px_ << "\" height=\"" << px_
          << "\" fill=\"white\"/>\n";
  }

  double X(double x) const { return (x / half_ + 1.0) * px_ / 2.0; }
  double Y(double y) const { return (1.0 - y / half_) * px_ / 2.0; }

  void line(double x1, double y1, double x2, double y2, const std::string& color,
            double width = 1.0, bool dashed = false) {
    body_ << "<line x1=\"" << X(x1) << "\" y1=\"" << Y(y1) << "\" x2=\"" << X(x2)
          << "\" y2=\"" << Y(y2) << "\" stroke=\"" << color
          << "\" stroke-width=\"" << width << "\"";
    if (dashed) body_ << " stroke-dasharray=\"4 3\"";
    body_ << "/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts,
               const std::string& fill, double opacity = 1.0) {
    body_ << "<polygon points=\"";
    for (const auto& [x, y] : pts) body_ << X(x) << "," << Y(y) << " ";
    body_ << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity
          << "\" stroke=\"none\"/>\n";
  }

  void dot(double x, double y, double r, const std::string& color) {
    body_ << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"" << r
          << "\" fill=\"" << color << "\"/>\n";
  }

  void text(double x, double y, const std::string& s,
            const std::string& color = "black", int size = 13) {
    body_ << "<text x=\"" << X(x) << "\" y=\"" << Y(y) << "\" font-size=\""
          << size << "\" fill=\"" << color
          << "\" font-family=\"sans-serif\">" << s << "</text>\n";
  }

  std::string finish() {
    body_ << "</svg>\n";
    return body_.str();
  }

 private:
  double half_;
  int px_;
  std::ostringstream body_;
};

namespace detail {

inline double ratd(const Rat& r) {
  return static_cast<double>(r.num()) / static_cast<double>(r.den());
}

// coordinates in the plane Σθ = const: u = (1,-1,0)/√2, v = (1,1,-2)/√6
inline std::pair<double, double> plane_coords(const RatVec& r) {
  double a = ratd(r[0]), b = ratd(r[1]), c = ratd(r[2]);
  return {(a - b) / std::sqrt(2.0), (a + b - 2.0 * c) / std::sqrt(6.0)};
}

inline std::pair<double, double> normalized_dir(const RatVec& r) {
  auto [x, y] = plane_coords(r);
  double n = std::hypot(x, y);
  if (n < 1e-12) return {0.0, 0.0};
  return {x / n, y / n};
}

}  // namespace detail

// Slice of a rank-3 wall arrangement by the affine plane Σθᵢ = 1 (so only the
// H⁺ side is visible): each 2-dimensional wall cone cuts the plane in the
// segment between its two extreme-ray images.
inline std::string rank3_scan_svg(const std::vector<ConeQ>& walls,
                                  const std::vector<ConeQ>& chambers,
                                  const std::vector<std::string>& axis_labels) {
  SvgCanvas cv(2.2);
  auto ray_point = [](const RatVec& r) -> std::pair<bool, std::pair<double, double>> {
    double s = detail::ratd(r[0]) + detail::ratd(r[1]) + detail::ratd(r[2]);
    if (s <= 1e-9) return {false, {0, 0}};
    double a = detail::ratd(r[0]) / s, b = detail::ratd(r[1]) / s,
           c = detail::ratd(r[2]) / s;
    double x = (a - b) / std::sqrt(2.0), y = (a + b - 2.0 * c) / std::sqrt(6.0);
    return {true, {x, y}};
  };
  // chamber cones C°(U) first, as light fills
  for (const auto& c : chambers) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : c.rays) {
      auto [ok, pt] = ray_point(r);
      if (ok) pts.push_back(pt);
    }
    if (pts.size() >= 3) cv.polygon(pts, "#cfe3f7", 0.5);
  }
  for (const auto& w : walls) {
    if (w.dim() != 2) continue;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : w.rays) {
      auto [ok, pt] = ray_point(r);
      if (ok) pts.push_back(pt);
    }
    for (const auto& l : w.lineality) {
      auto [ok, pt] = ray_point(l);
      if (ok) pts.push_back(pt);
      RatVec neg = l;
      for (auto& x : neg) x = -x;
      auto [ok2, pt2] = ray_point(neg);
      if (ok2) pts.push_back(pt2);
    }
    if (pts.size() == 2)
      cv.line(pts[0].first, pts[0].second, pts[1].first, pts[1].second, "#444",
              1.2);
  }
  // the three coordinate directions for orientation
  const char* names[3] = {"e1", "e2", "e3"};
  for (int i = 0; i < 3; ++i) {
    RatVec e(3, Rat(0));
    e[i] = Rat(1);
    auto [ok, pt] = ray_point(e);
    if (!ok) continue;
    cv.dot(pt.first, pt.second, 3.0, "#c0392b");
    std::string label = i < static_cast<int>(axis_labels.size())
                            ? axis_labels[i]
                            : std::string(names[i]);
    cv.text(pt.first + 0.07, pt.second + 0.05, label, "#c0392b");
  }
  return cv.finish();
}

// Hexagon figure for the n = 3 doubled cycle: the plane H with the six rays
// η_{i,j}, the sector cones of the atlas, and one shaded sector.
inline std::string atilde_hexagon_svg(const std::vector<HClass>& atlas,
                                      const ConeQ* shaded) {
  SvgCanvas cv(1.6);
  if (shaded) {
    std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
    std::vector<std::pair<double, double>> dirs;
    for (const auto& r : shaded->rays) dirs.push_back(detail::normalized_dir(r));
    if (dirs.size() == 2) {
      // walk the boundary fan: ray, midpoint direction, ray
      double mx = dirs[0].first + dirs[1].first,
             my = dirs[0].second + dirs[1].second;
      double n = std::hypot(mx, my);
      pts.push_back({1.2 * dirs[0].first, 1.2 * dirs[0].second});
      if (n > 1e-9) pts.push_back({1.2 * mx / n, 1.2 * my / n});
      pts.push_back({1.2 * dirs[1].first, 1.2 * dirs[1].second});
      cv.polygon(pts, "#bbbbbb", 0.6);
    }
  }
  for (const auto& h : atlas) {
    if (h.cone.dim() != 1) continue;
    auto [x, y] = detail::normalized_dir(h.cone.rays[0]);
    cv.line(0, 0, 1.2 * x, 1.2 * y, "black", 1.4);
    const RatVec& r = h.cone.rays[0];
    int i = -1, j = -1;
    for (int k = 0; k < 3; ++k) {
      if (r[k] == Rat(1)) i = k;
      if (r[k] == Rat(-1)) j = k;
    }
    std::ostringstream lbl;
    lbl << "&#951;" << (i + 1) << (j + 1);  // η with 1-based indices
    cv.text(1.32 * x - 0.06, 1.32 * y - 0.02, lbl.str());
  }
  cv.dot(0, 0, 2.5, "black");
  return cv.finish();
}

}  // namespace stabfan
