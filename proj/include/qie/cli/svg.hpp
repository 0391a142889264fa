#pragma once

// Minimal SVG line plots and heatmaps for figure previews.

#include <string>
#include <utility>
#include <vector>

namespace qie::cli {

struct Series {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
};

struct LinePlot {
  std::string title, x_label, y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
  /// Horizontal reference lines (e.g. a bound).
  std::vector<double> reference_y;
};

struct Heatmap {
  std::string title, x_label, y_label, value_label;
  /// Grid coordinates; values are row-major with one row per y.
  std::vector<double> x, y;
  std::vector<double> values;
  bool log_y = false;
  /// Colour scale is symmetric in log(value / pivot).
  double pivot = 1.0;
  /// Overlaid polyline in data coordinates.
  std::vector<std::pair<double, double>> contour;
};

std::string render_svg(const LinePlot& plot);
std::string render_svg(const Heatmap& map);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qie::cli
