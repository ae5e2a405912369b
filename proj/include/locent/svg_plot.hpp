#pragma once

#include <string>
#include <vector>

namespace locent {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string dasharray;  // empty for a solid line
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 640;
  int height = 420;
};

/// Standalone SVG document with axes, ticks, a legend and one polyline per series.
std::string render_line_chart(const LineChart& chart);

}  // namespace locent
