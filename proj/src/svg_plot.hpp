#pragma once

#include <string>
#include <vector>

// Minimal native SVG line plots: enough for legible sweep and time-series
// charts without an external plotting runtime.

namespace xsim {

struct PlotSeries {
  std::string label;
  std::string color = "#1f77b4";
  bool dashed = false;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<PlotSeries> series;
};

std::string render_svg(const PlotSpec& spec, int width = 860, int height = 540);
void write_svg(const PlotSpec& spec, const std::string& path);

} // namespace xsim
