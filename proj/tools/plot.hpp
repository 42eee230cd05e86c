#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace netcast::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
};

/// Static SVG line chart. Non-finite points and, on a log axis, x <= 0 are skipped.
void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec,
                    const std::vector<PlotSeries>& series);

} // namespace netcast::cli
