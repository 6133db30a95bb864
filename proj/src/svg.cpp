#include "zetalab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace zetalab {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi == lo) lo -= 0.5, hi += 0.5;
  }
};

}  // namespace

std::string render_svg(const SvgPlot& plot) {
  const double margin_l = 70, margin_r = 20, margin_t = 36, margin_b = 50;
  const double w = plot.width - margin_l - margin_r;
  const double h = plot.height - margin_t - margin_b;

  auto tx = [&](double x) { return plot.log_x ? (x > 0 ? std::log10(x) : std::nan("")) : x; };
  auto ty = [&](double y) { return plot.log_y ? (y > 0 ? std::log10(y) : std::nan("")) : y; };

  Range rx, ry;
  for (const auto& s : plot.series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(tx(x)) || !std::isfinite(ty(y))) continue;
      rx.add(tx(x));
      ry.add(ty(y));
    }
  }
  if (plot.origin_centered) {
    double r = 0.0;
    for (double v : {rx.lo, rx.hi, ry.lo, ry.hi}) {
      if (std::isfinite(v)) r = std::max(r, std::abs(v));
    }
    if (r == 0.0) r = 1.0;
    r *= 1.05;
    rx.lo = ry.lo = -r;
    rx.hi = ry.hi = r;
  }
  rx.settle();
  ry.settle();

  double sx = w / (rx.hi - rx.lo), sy = h / (ry.hi - ry.lo);
  double ox = margin_l, oy = margin_t;
  if (plot.origin_centered) {
    const double sc = std::min(sx, sy);
    ox += (w - sc * (rx.hi - rx.lo)) / 2;
    oy += (h - sc * (ry.hi - ry.lo)) / 2;
    sx = sy = sc;
  }
  auto px = [&](double x) { return ox + (x - rx.lo) * sx; };
  auto py = [&](double y) { return oy + (ry.hi - y) * sy; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(plot.width) + "\" height=\"" +
         std::to_string(plot.height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt("%.1f", plot.width / 2.0) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" +
         escape(plot.title) + "</text>\n";
  out += "<rect x=\"" + fmt("%.1f", margin_l) + "\" y=\"" + fmt("%.1f", margin_t) + "\" width=\"" + fmt("%.1f", w) +
         "\" height=\"" + fmt("%.1f", h) + "\" fill=\"none\" stroke=\"#444\"/>\n";

  if (plot.origin_centered || (rx.lo < 0 && rx.hi > 0)) {
    out += "<line x1=\"" + fmt("%.2f", px(0)) + "\" y1=\"" + fmt("%.2f", margin_t) + "\" x2=\"" + fmt("%.2f", px(0)) +
           "\" y2=\"" + fmt("%.2f", margin_t + h) + "\" stroke=\"#bbb\"/>\n";
  }
  if (plot.origin_centered || (ry.lo < 0 && ry.hi > 0)) {
    out += "<line x1=\"" + fmt("%.2f", margin_l) + "\" y1=\"" + fmt("%.2f", py(0)) + "\" x2=\"" +
           fmt("%.2f", margin_l + w) + "\" y2=\"" + fmt("%.2f", py(0)) + "\" stroke=\"#bbb\"/>\n";
  }

  auto label = [&](double v, bool log) { return log ? "1e" + fmt("%.3g", v) : fmt("%.4g", v); };
  out += "<text x=\"" + fmt("%.1f", margin_l) + "\" y=\"" + fmt("%.1f", margin_t + h + 16) + "\">" +
         label(rx.lo, plot.log_x) + "</text>\n";
  out += "<text x=\"" + fmt("%.1f", margin_l + w) + "\" y=\"" + fmt("%.1f", margin_t + h + 16) +
         "\" text-anchor=\"end\">" + label(rx.hi, plot.log_x) + "</text>\n";
  out += "<text x=\"" + fmt("%.1f", margin_l - 6) + "\" y=\"" + fmt("%.1f", margin_t + h) + "\" text-anchor=\"end\">" +
         label(ry.lo, plot.log_y) + "</text>\n";
  out += "<text x=\"" + fmt("%.1f", margin_l - 6) + "\" y=\"" + fmt("%.1f", margin_t + 10) + "\" text-anchor=\"end\">" +
         label(ry.hi, plot.log_y) + "</text>\n";
  out += "<text x=\"" + fmt("%.1f", margin_l + w / 2) + "\" y=\"" + fmt("%.1f", plot.height - 12.0) +
         "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  out += "<text transform=\"translate(16," + fmt("%.1f", margin_t + h / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(plot.y_label) + "</text>\n";

  double legend_y = margin_t + 14;
  for (const auto& s : plot.series) {
    std::string pts;
    for (const auto& [x, y] : s.points) {
      const double X = tx(x), Y = ty(y);
      if (!std::isfinite(X) || !std::isfinite(Y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += fmt("%.2f", px(X)) + "," + fmt("%.2f", py(Y));
    }
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.2\" points=\"" + pts + "\"/>\n";
    if (s.markers) {
      for (const auto& [x, y] : s.points) {
        const double X = tx(x), Y = ty(y);
        if (!std::isfinite(X) || !std::isfinite(Y)) continue;
        out += "<circle cx=\"" + fmt("%.2f", px(X)) + "\" cy=\"" + fmt("%.2f", py(Y)) + "\" r=\"2\" fill=\"" + s.color +
               "\"/>\n";
      }
    }
    if (!s.label.empty()) {
      out += "<text x=\"" + fmt("%.1f", margin_l + w - 8) + "\" y=\"" + fmt("%.1f", legend_y) +
             "\" text-anchor=\"end\" fill=\"" + s.color + "\">" + escape(s.label) + "</text>\n";
      legend_y += 14;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace zetalab
