#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace xsim {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// round the raw span to 1/2/5 ticks
std::vector<double> linear_ticks(double lo, double hi, int want = 6) {
  std::vector<double> t;
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / want;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const double first = std::ceil(lo / step) * step;
  for (double v = first; v <= hi + 1e-9 * step; v += step) t.push_back(v);
  return t;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> t;
  const int a = static_cast<int>(std::floor(std::log10(lo)));
  const int b = static_cast<int>(std::ceil(std::log10(hi)));
  for (int e = a; e <= b; ++e) {
    const double v = std::pow(10.0, e);
    if (v >= lo * 0.999 && v <= hi * 1.001) t.push_back(v);
  }
  if (t.empty()) return linear_ticks(lo, hi);
  return t;
}

} // namespace

std::string render_svg(const PlotSpec& spec, int width, int height) {
  const double ml = 70, mr = 20, mt = 40, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : spec.series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (spec.log_x && s.x[i] <= 0) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
  if (xmax == xmin) { xmax = xmin + 1; }
  if (ymax == ymin) { ymax = ymin + 1; ymin -= 1; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto px = [&](double x) {
    const double u = spec.log_x ? (std::log10(x) - std::log10(xmin)) /
                                      (std::log10(xmax) - std::log10(xmin))
                                : (x - xmin) / (xmax - xmin);
    return ml + u * pw;
  };
  auto py = [&](double y) { return mt + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "' viewBox='0 0 " << width << " " << height << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << width / 2 << "' y='24' text-anchor='middle' font-size='16' "
         "font-family='sans-serif'>" << spec.title << "</text>\n";

  // frame
  out << "<rect x='" << ml << "' y='" << mt << "' width='" << pw << "' height='" << ph
      << "' fill='none' stroke='black'/>\n";

  const auto xticks = spec.log_x ? log_ticks(xmin, xmax) : linear_ticks(xmin, xmax);
  for (double v : xticks) {
    const double x = px(v);
    out << "<line x1='" << x << "' y1='" << mt + ph << "' x2='" << x << "' y2='" << mt + ph + 5
        << "' stroke='black'/>\n";
    out << "<text x='" << x << "' y='" << mt + ph + 20
        << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << fmt(v)
        << "</text>\n";
    out << "<line x1='" << x << "' y1='" << mt << "' x2='" << x << "' y2='" << mt + ph
        << "' stroke='#dddddd' stroke-width='0.6'/>\n";
  }
  for (double v : linear_ticks(ymin, ymax)) {
    const double y = py(v);
    out << "<line x1='" << ml - 5 << "' y1='" << y << "' x2='" << ml << "' y2='" << y
        << "' stroke='black'/>\n";
    out << "<text x='" << ml - 8 << "' y='" << y + 4
        << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt(v)
        << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << y << "' x2='" << ml + pw << "' y2='" << y
        << "' stroke='#dddddd' stroke-width='0.6'/>\n";
  }
  out << "<text x='" << ml + pw / 2 << "' y='" << height - 12
      << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << spec.x_label
      << "</text>\n";
  out << "<text x='18' y='" << mt + ph / 2
      << "' text-anchor='middle' font-size='13' font-family='sans-serif' transform='rotate(-90 18 "
      << mt + ph / 2 << ")'>" << spec.y_label << "</text>\n";

  for (const auto& s : spec.series) {
    out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5'";
    if (s.dashed) out << " stroke-dasharray='6,4'";
    out << " points='";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (spec.log_x && s.x[i] <= 0) continue;
      out << px(s.x[i]) << "," << py(s.y[i]) << " ";
    }
    out << "'/>\n";
  }

  // legend
  double ly = mt + 14;
  for (const auto& s : spec.series) {
    out << "<line x1='" << ml + pw - 150 << "' y1='" << ly << "' x2='" << ml + pw - 120
        << "' y2='" << ly << "' stroke='" << s.color << "' stroke-width='2'";
    if (s.dashed) out << " stroke-dasharray='6,4'";
    out << "/>\n";
    out << "<text x='" << ml + pw - 114 << "' y='" << ly + 4
        << "' font-size='11' font-family='sans-serif'>" << s.label << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const PlotSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_svg: cannot open '" + path + "'");
  out << render_svg(spec);
}

} // namespace xsim
