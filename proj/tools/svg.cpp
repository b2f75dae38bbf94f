#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polexp::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMargin = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

void write_svg(std::ostream& out, const SvgPlot& plot) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;

  auto usable = [&](double v, bool log_axis) { return !log_axis || v > 0.0; };
  for (const SvgSeries& s : plot.series) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!usable(s.xs[i], plot.log_x) || !usable(s.ys[i], plot.log_y)) continue;
      const double x = plot.log_x ? std::log10(s.xs[i]) : s.xs[i];
      const double y = plot.log_y ? std::log10(s.ys[i]) : s.ys[i];
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;

  auto px = [&](double x) {
    return kMargin + (x - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin);
  };
  auto py = [&](double y) {
    return kHeight - kMargin - (y - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  if (!plot.title.empty()) {
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\">" << plot.title
        << "</text>\n";
  }
  out << "  <rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  std::size_t color = 0;
  for (const SvgSeries& s : plot.series) {
    out << "  <polyline fill=\"none\" stroke=\"" << kPalette[color % 8]
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!usable(s.xs[i], plot.log_x) || !usable(s.ys[i], plot.log_y)) continue;
      const double x = plot.log_x ? std::log10(s.xs[i]) : s.xs[i];
      const double y = plot.log_y ? std::log10(s.ys[i]) : s.ys[i];
      if (!first) out << ' ';
      out << px(x) << ',' << py(y);
      first = false;
    }
    out << "\"/>\n";
    if (!s.name.empty()) {
      out << "  <text x=\"" << kWidth - kMargin - 150 << "\" y=\"" << kMargin + 18 * (color + 1)
          << "\" fill=\"" << kPalette[color % 8] << "\">" << s.name << "</text>\n";
    }
    ++color;
  }
  out << "</svg>\n";
}

}  // namespace polexp::cli
