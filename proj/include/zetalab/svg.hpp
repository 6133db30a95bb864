#pragma once

// Minimal SVG line plots: polylines, a frame, and min/max tick labels.

#include <string>
#include <utility>
#include <vector>

namespace zetalab {

struct SvgSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<std::pair<double, double>> points;
  bool markers = false;
};

struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  // Equal scales on both axes with the origin in the middle (for trajectories).
  bool origin_centered = false;
  int width = 640;
  int height = 480;
  std::vector<SvgSeries> series;
};

/// Deterministic output: identical plots give identical bytes.
std::string render_svg(const SvgPlot& plot);

}  // namespace zetalab
