#include "ddfl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ddfl {
namespace {

constexpr double kW = 720, kH = 480;
constexpr double kL = 80, kR = 24, kT = 44, kB = 56;  // margins

std::string num(double v, const char* fmt = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double tx(double v, bool logscale) { return logscale ? std::log10(v) : v; }

}  // namespace

std::string render_line_plot(const std::string& title, const std::string& xlabel,
                             const std::string& ylabel,
                             const std::vector<PlotSeries>& series, bool log_x,
                             bool log_y) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (log_x && !(s.x[i] > 0.0)) continue;
      if (log_y && !(s.y[i] > 0.0)) continue;
      const double px = tx(s.x[i], log_x), py = tx(s.y[i], log_y);
      xmin = std::min(xmin, px);
      xmax = std::max(xmax, px);
      ymin = std::min(ymin, py);
      ymax = std::max(ymax, py);
    }
  if (!(xmin <= xmax)) {  // nothing plottable
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  auto sx = [&](double v) { return kL + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return kH - kB - (v - ymin) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\""
      << kH << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  const int nticks = 5;
  for (int i = 0; i <= nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / nticks;
    const double fy = ymin + (ymax - ymin) * i / nticks;
    const double gx = sx(fx), gy = sy(fy);
    out << "<line x1=\"" << num(gx) << "\" y1=\"" << kT << "\" x2=\"" << num(gx)
        << "\" y2=\"" << kH - kB << "\" stroke=\"#e0e0e0\"/>\n"
        << "<line x1=\"" << kL << "\" y1=\"" << num(gy) << "\" x2=\"" << kW - kR
        << "\" y2=\"" << num(gy) << "\" stroke=\"#e0e0e0\"/>\n";
    const double lx = log_x ? std::pow(10.0, fx) : fx;
    const double ly = log_y ? std::pow(10.0, fy) : fy;
    out << "<text x=\"" << num(gx) << "\" y=\"" << kH - kB + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(lx, "%.3g") << "</text>\n"
        << "<text x=\"" << kL - 6 << "\" y=\"" << num(gy + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << num(ly, "%.3g") << "</text>\n";
  }
  out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\""
      << ph << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << kL + pw / 2 << "\" y=\"" << kH - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xlabel << "</text>\n"
      << "<text x=\"18\" y=\"" << kT + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 "
      << kT + ph / 2 << ")\">" << ylabel << "</text>\n";

  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (log_x && !(s.x[i] > 0.0)) continue;
      if (log_y && !(s.y[i] > 0.0)) continue;
      if (!first) out << ' ';
      out << num(sx(tx(s.x[i], log_x))) << ',' << num(sy(tx(s.y[i], log_y)));
      first = false;
    }
    out << "\"/>\n";
  }

  double ly = kT + 14;
  for (const auto& s : series) {
    out << "<line x1=\"" << kW - kR - 150 << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << kW - kR - 126 << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << kW - kR - 120 << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ddfl
