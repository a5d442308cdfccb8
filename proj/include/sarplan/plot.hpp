#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "sarplan/util.hpp"

namespace sarplan {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

// Round step (1, 2 or 5 times a power of ten) giving roughly `n` ticks.
inline double tick_step(double span, int n) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / n;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

inline std::string svg_number(double v) { return format_double(std::round(v * 100.0) / 100.0); }

}  // namespace detail

// Static line chart with axes, ticks and labels.
inline void write_svg_line_chart(std::ostream& out, const Series& s, const std::string& title, const std::string& x_label,
                                 const std::string& y_label) {
  constexpr double W = 640, H = 420, L = 70, R = 20, Tm = 40, B = 55;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!s.x.empty()) {
    x0 = std::min(0.0, *std::min_element(s.x.begin(), s.x.end()));
    x1 = *std::max_element(s.x.begin(), s.x.end());
    y0 = std::min(0.0, *std::min_element(s.y.begin(), s.y.end()));
    y1 = *std::max_element(s.y.begin(), s.y.end());
  }
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - Tm - B); };
  using detail::svg_number;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << Tm << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  const double xs = detail::tick_step(x1 - x0, 8), ys = detail::tick_step(y1 - y0, 6);
  for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs) {
    out << "<line x1=\"" << svg_number(px(v)) << "\" y1=\"" << H - B << "\" x2=\"" << svg_number(px(v)) << "\" y2=\"" << H - B + 5
        << "\" stroke=\"black\"/>";
    out << "<text x=\"" << svg_number(px(v)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << format_double(v)
        << "</text>\n";
  }
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
    out << "<line x1=\"" << L - 5 << "\" y1=\"" << svg_number(py(v)) << "\" x2=\"" << L << "\" y2=\"" << svg_number(py(v))
        << "\" stroke=\"black\"/>";
    out << "<text x=\"" << L - 8 << "\" y=\"" << svg_number(py(v) + 4) << "\" text-anchor=\"end\">" << format_double(v)
        << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (Tm + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (Tm + H - B) / 2
      << ")\">" << y_label << "</text>\n";
  if (!s.x.empty()) {
    out << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) out << (i ? " " : "") << svg_number(px(s.x[i])) << ',' << svg_number(py(s.y[i]));
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace sarplan
