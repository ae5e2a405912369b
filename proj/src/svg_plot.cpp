#include "locent/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "locent/errors.hpp"

namespace locent {

namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 52.0;
constexpr int kTicks = 5;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

}  // namespace

std::string render_line_chart(const LineChart& chart) {
  Range xr;
  Range yr;
  for (const auto& s : chart.series) {
    if (s.x.size() != s.y.size()) throw InputError("series '" + s.label + "' has mismatched x and y lengths");
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  if (!std::isfinite(xr.lo)) throw InputError("chart has no data");
  xr.pad();
  yr.lo = std::min(yr.lo, 0.0);
  yr.pad();

  const double plot_w = chart.width - kMarginLeft - kMarginRight;
  const double plot_h = chart.height - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kMarginTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * plot_h; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\"" << chart.height
      << "\" viewBox=\"0 0 " << chart.width << ' ' << chart.height << "\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << chart.width << "\" height=\"" << chart.height
      << "\" fill=\"white\"/>\n";
  if (!chart.title.empty()) {
    out << "  <text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape(chart.title) << "</text>\n";
  }

  // Axes frame and ticks.
  out << "  <g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "    <rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop) << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\"/>\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double tx = px(xr.lo + (xr.hi - xr.lo) * i / kTicks);
    const double ty = py(yr.lo + (yr.hi - yr.lo) * i / kTicks);
    const double bottom = kMarginTop + plot_h;
    out << "    <line x1=\"" << fmt(tx) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(tx) << "\" y2=\""
        << fmt(bottom + 5) << "\"/>\n"
        << "    <line x1=\"" << fmt(kMarginLeft - 5) << "\" y1=\"" << fmt(ty) << "\" x2=\"" << fmt(kMarginLeft)
        << "\" y2=\"" << fmt(ty) << "\"/>\n";
  }
  out << "  </g>\n  <g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double vx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double vy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    out << "    <text x=\"" << fmt(px(vx)) << "\" y=\"" << fmt(kMarginTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << tick_label(vx) << "</text>\n"
        << "    <text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(py(vy) + 4) << "\" text-anchor=\"end\">"
        << tick_label(vy) << "</text>\n";
  }
  out << "  </g>\n"
      << "  <text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\"" << chart.height - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(chart.x_label)
      << "</text>\n"
      << "  <text x=\"16\" y=\"" << fmt(kMarginTop + plot_h / 2) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 " << fmt(kMarginTop + plot_h / 2)
      << ")\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (!s.dasharray.empty()) out << " stroke-dasharray=\"" << escape(s.dasharray) << '"';
    out << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) out << ' ';
      out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i]));
    }
    out << "\"/>\n";

    // Legend entries are drawn with <line> so the polyline count equals the series count.
    const double ly = kMarginTop + 16 + 20.0 * static_cast<double>(k);
    const double lx = kMarginLeft + plot_w + 14;
    out << "  <line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\"" << fmt(lx + 34) << "\" y2=\""
        << fmt(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
    if (!s.dasharray.empty()) out << " stroke-dasharray=\"" << escape(s.dasharray) << '"';
    out << "/>\n  <text x=\"" << fmt(lx + 42) << "\" y=\"" << fmt(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace locent
