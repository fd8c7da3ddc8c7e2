#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wcs {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y), drawn in order
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  double y_min = 0.0;
  double y_max = 1.0;
  std::vector<PlotSeries> series;
};

// Standalone SVG document: axes with ticks, one polyline per series, legend.
// Output depends only on the plot contents.
std::string render_svg(const LinePlot& plot);

}  // namespace wcs
