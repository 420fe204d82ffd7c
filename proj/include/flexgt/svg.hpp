#pragma once

#include <string>
#include <vector>

namespace flexgt {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = true;
};

/// Self-contained SVG 1.1 line chart: one polyline per series plus a legend.
/// log_y plots log10 of positive values; non-positive points are dropped.
/// Deterministic: identical data yields identical bytes.
std::string render_line_chart(const std::vector<Series>& series,
                              const LineChartSpec& spec);

struct HeatmapSpec {
  std::string title;
  std::string x_label;  // d1 axis
  std::string y_label;  // d2 axis
};

/// Heatmap over an integer grid; values[r][c] is the cell at d2 = r+1,
/// d1 = c+1. NaN cells render gray as "not reached". The argmin cell
/// (1-based, argmin_d1 = 0 disables) is outlined.
std::string render_heatmap(const std::vector<std::vector<double>>& values,
                           int argmin_d1, int argmin_d2,
                           const HeatmapSpec& spec);

}  // namespace flexgt
