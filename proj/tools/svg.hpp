#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polexp::cli {

struct SvgSeries {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct SvgPlot {
  std::string title;
  bool log_x = false;
  bool log_y = false;
  std::vector<SvgSeries> series;
};

/// Minimal presentation-only plot: one polyline per series on an 800x600
/// canvas, values mapped linearly or logarithmically per axis. Non-positive
/// values are dropped on log axes.
void write_svg(std::ostream& out, const SvgPlot& plot);

}  // namespace polexp::cli
