#pragma once

// Minimal SVG writer for the plot outputs: configuration curves, line
// families, membership witnesses, and Cayley-grid heatmaps of discrete
// covers. Static artifacts only.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "kakeya/common.hpp"
#include "kakeya/config.hpp"
#include "kakeya/discrete.hpp"

namespace kakeya {

class SvgCanvas {
 public:
  SvgCanvas(double x0, double y0, double x1, double y1, int pixels = 640)
      : x0_(x0), y0_(y0), x1_(x1), y1_(y1), px_(pixels) {
    double w = x1_ - x0_, h = y1_ - y0_;
    py_ = static_cast<int>(px_ * h / w);
  }

  void comment(const std::string& text) { body_ << "<!-- " << text << " -->\n"; }

  void line(double ax, double ay, double bx, double by, const std::string& stroke,
            double width = 1.0, double opacity = 1.0) {
    auto [pax, pay] = map(ax, ay);
    auto [pbx, pby] = map(bx, by);
    body_ << "<line x1=\"" << pax << "\" y1=\"" << pay << "\" x2=\"" << pbx << "\" y2=\"" << pby
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\" stroke-opacity=\""
          << opacity << "\"/>\n";
  }

  void circle(double cx, double cy, double r_px, const std::string& fill,
              const std::string& stroke = "none") {
    auto [pcx, pcy] = map(cx, cy);
    body_ << "<circle cx=\"" << pcx << "\" cy=\"" << pcy << "\" r=\"" << r_px << "\" fill=\""
          << fill << "\" stroke=\"" << stroke << "\"/>\n";
  }

  void polyline(const std::vector<Eigen::Vector2d>& pts, const std::string& stroke,
                double width = 1.5) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width
          << "\" points=\"";
    for (const auto& p : pts) {
      auto [px, py] = map(p.x(), p.y());
      body_ << px << "," << py << " ";
    }
    body_ << "\"/>\n";
  }

  void rect_px(double px, double py, double w, double h, const std::string& fill) {
    body_ << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << w << "\" height=\"" << h
          << "\" fill=\"" << fill << "\"/>\n";
  }

  void text_px(double px, double py, const std::string& t, int size = 12) {
    body_ << "<text x=\"" << px << "\" y=\"" << py << "\" font-size=\"" << size
          << "\" font-family=\"monospace\">" << t << "</text>\n";
  }

  std::string finish() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px_ << "\" height=\"" << py_
        << "\" viewBox=\"0 0 " << px_ << " " << py_ << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << body_.str();
    out << "</svg>\n";
    return out.str();
  }

  int width_px() const { return px_; }
  int height_px() const { return py_; }

 private:
  std::pair<double, double> map(double x, double y) const {
    double u = (x - x0_) / (x1_ - x0_) * px_;
    double v = (1.0 - (y - y0_) / (y1_ - y0_)) * py_;
    return {u, v};
  }

  double x0_, y0_, x1_, y1_;
  int px_, py_;
  std::ostringstream body_;
};

// Configuration curve plus a fan of its lines (or needle segments), with an
// optional target and witness line.
inline std::string plot_config_2d(const ConfigSpec& spec, double R,
                                  const std::string& manifest_comment,
                                  const Eigen::Vector2d* target = nullptr,
                                  const double* witness_theta = nullptr) {
  double period = spec.period();
  std::vector<Eigen::Vector2d> curve;
  double lo = -1, hi = 1;
  for (int k = 0; k <= 512; ++k) {
    Eigen::Vector2d p = eval_angle(spec, period * k / 512);
    curve.push_back(p);
    lo = std::min({lo, p.x() - 1, p.y() - 1});
    hi = std::max({hi, p.x() + 1, p.y() + 1});
  }
  if (target) {
    lo = std::min({lo, target->x() - 1, target->y() - 1});
    hi = std::max({hi, target->x() + 1, target->y() + 1});
  }
  SvgCanvas svg(lo, lo, hi, hi);
  svg.comment(manifest_comment);
  double half = std::isinf(R) ? (hi - lo) : R / 2;
  for (int k = 0; k < 64; ++k) {
    double th = period * k / 64;
    Eigen::Vector2d s = eval_angle(spec, th);
    Eigen::Vector2d e(std::cos(th), std::sin(th));
    svg.line(s.x() - half * e.x(), s.y() - half * e.y(), s.x() + half * e.x(),
             s.y() + half * e.y(), "#9ecae1", 0.8, 0.7);
  }
  svg.polyline(curve, "#08519c", 2.0);
  if (target && witness_theta) {
    Eigen::Vector2d s = eval_angle(spec, *witness_theta);
    Eigen::Vector2d e(std::cos(*witness_theta), std::sin(*witness_theta));
    svg.line(s.x() - half * e.x(), s.y() - half * e.y(), s.x() + half * e.x(),
             s.y() + half * e.y(), "#e6550d", 2.0);
  }
  if (target) svg.circle(target->x(), target->y(), 4, "#31a354", "black");
  return svg.finish();
}

// Cayley-grid heatmap: cell (row a, col b) is colored when a*b lies in the
// cover; the block structure of chosen cosets shows up directly.
inline std::string plot_discrete_cover(const discrete::FiniteGroup& g,
                                       const discrete::ElementSet& cover,
                                       const std::string& manifest_comment) {
  const int m = g.order;
  const int cell = std::max(2, 512 / m);
  SvgCanvas svg(0, 0, 1, 1, cell * m + 120);
  svg.comment(manifest_comment);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      bool in = cover.contains(g.mul(a, b));
      svg.rect_px(b * cell, a * cell, cell - 0.5, cell - 0.5, in ? "#2b8cbe" : "#ece7f2");
    }
  svg.text_px(4, cell * m + 16, g.name + "  |E|=" + std::to_string(cover.count()) + "/" +
                                    std::to_string(m));
  return svg.finish();
}

}  // namespace kakeya
