#pragma once

#include <string>
#include <utility>
#include <vector>

namespace modrec {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

// Static SVG figures. Output is a pure function of the inputs (fixed
// formatting, no timestamps), so identical data renders identical bytes.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series);

// Row-normalized heatmap with per-cell annotations.
std::string render_heatmap(const std::string& title, const std::vector<std::string>& labels,
                           const std::vector<std::vector<double>>& matrix);

// Scatter of (x, y) points.
std::string render_scatter(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<std::pair<double, double>>& points);

}  // namespace modrec
