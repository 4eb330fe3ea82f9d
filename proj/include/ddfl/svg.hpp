#pragma once

#include <string>
#include <vector>

namespace ddfl {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

// Self-contained SVG line chart: axes, ticks, grid, legend, polylines. Points
// that cannot be shown (non-finite, or nonpositive on a log axis) are skipped.
std::string render_line_plot(const std::string& title, const std::string& xlabel,
                             const std::string& ylabel,
                             const std::vector<PlotSeries>& series, bool log_x = false,
                             bool log_y = false);

}  // namespace ddfl
