#include "ale/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ale/common.hpp"

namespace ale {

namespace {

constexpr double kWidth = 860, kHeight = 540;
constexpr double kLeft = 70, kRight = 30, kTop = 46, kBottom = 56;
constexpr double kBarWidth = 18, kBarGap = 54;  // heatmap colorbar

std::string num(double v) { return format_compact(v); }

struct Scale {
  double lo, hi, out_lo, out_hi;
  double operator()(double v) const { return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo); }
};

void expand(double& lo, double& hi) {
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
}

// Round tick labels at roughly `want` positions.
std::vector<double> label_positions(double lo, double hi, int want) {
  const double span = hi - lo;
  const double raw = span / want;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) out.push_back(v);
  return out;
}

void open_svg(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
     << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";
}

void draw_frame(std::ostringstream& os, const std::string& title, const std::string& x_label,
                const std::string& y_label, double plot_right) {
  os << "<text x=\"" << (kLeft + (plot_right - kLeft) / 2) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">"
     << title << "</text>\n";
  os << "<text x=\"" << (kLeft + (plot_right - kLeft) / 2) << "\" y=\"" << (kHeight - 12)
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kTop + (kHeight - kTop - kBottom) / 2)
     << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << y_label << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << (plot_right - kLeft) << "\" height=\""
     << (kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"#444444\"/>\n";
}

// Blue -> white -> red, symmetric around zero when the range straddles it.
std::string diverging_color(double v, double lo, double hi) {
  const double extent = std::max(std::abs(lo), std::abs(hi));
  double t = extent > 0 ? v / extent : 0.0;  // -1..1
  t = std::clamp(t, -1.0, 1.0);
  int r, g, b;
  if (t < 0) {
    r = static_cast<int>(std::lround(255 * (1 + t)));
    g = static_cast<int>(std::lround(255 * (1 + 0.6 * t)));
    b = 255;
  } else {
    r = 255;
    g = static_cast<int>(std::lround(255 * (1 - 0.6 * t)));
    b = static_cast<int>(std::lround(255 * (1 - t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<double>& ticks,
                              const std::vector<LineSeries>& series) {
  if (series.empty()) fail("svg: no series to draw");
  double xlo = series[0].x.front(), xhi = series[0].x.back(), ylo = series[0].y[0], yhi = ylo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || s.x.empty()) fail("svg: series '", s.label, "' is empty or ragged");
    for (double v : s.x) {
      xlo = std::min(xlo, v);
      xhi = std::max(xhi, v);
    }
    for (double v : s.y) {
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  }
  expand(xlo, xhi);
  expand(ylo, yhi);
  const double plot_right = kWidth - kRight;
  const Scale sx{xlo, xhi, kLeft, plot_right};
  const Scale sy{ylo, yhi, kHeight - kBottom, kTop};

  std::ostringstream os;
  open_svg(os);
  draw_frame(os, title, x_label, y_label, plot_right);

  // Tick marks at every breakpoint; labels only at round positions.
  for (double t : ticks) {
    os << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << (kHeight - kBottom) << "\" x2=\"" << num(sx(t))
       << "\" y2=\"" << (kHeight - kBottom + 5) << "\" stroke=\"#444444\"/>\n";
  }
  for (double v : label_positions(xlo, xhi, 8)) {
    os << "<text x=\"" << num(sx(v)) << "\" y=\"" << (kHeight - kBottom + 20)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(v) << "</text>\n";
  }
  for (double v : label_positions(ylo, yhi, 7)) {
    os << "<line x1=\"" << (kLeft - 4) << "\" y1=\"" << num(sy(v)) << "\" x2=\"" << kLeft << "\" y2=\""
       << num(sy(v)) << "\" stroke=\"#444444\"/>\n";
    os << "<text x=\"" << (kLeft - 8) << "\" y=\"" << num(sy(v) + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }

  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << ' ';
      os << num(sx(s.x[i])) << ',' << num(sy(s.y[i]));
    }
    os << "\"/>\n";
  }

  double legend_y = kTop + 16;
  for (const auto& s : series) {
    os << "<line x1=\"" << (plot_right - 150) << "\" y1=\"" << legend_y << "\" x2=\"" << (plot_right - 122)
       << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << "/>\n";
    os << "<text x=\"" << (plot_right - 116) << "\" y=\"" << (legend_y + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    legend_y += 18;
  }

  os << "</svg>\n";
  return os.str();
}

std::string render_heatmap(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<double>& breaks_x,
                           const std::vector<double>& breaks_y,
                           const std::vector<double>& corner_values,
                           const std::vector<std::uint8_t>& cell_empty) {
  const std::size_t Kx = breaks_x.size() - 1;
  const std::size_t Ky = breaks_y.size() - 1;
  if (corner_values.size() != (Kx + 1) * (Ky + 1)) fail("svg: corner lattice size mismatch");
  if (cell_empty.size() != Kx * Ky) fail("svg: empty mask size mismatch");

  double vlo = corner_values[0], vhi = corner_values[0];
  for (double v : corner_values) {
    vlo = std::min(vlo, v);
    vhi = std::max(vhi, v);
  }
  if (vlo == vhi) vhi = vlo + 1;

  const double plot_right = kWidth - kRight - kBarWidth - kBarGap;
  const Scale sx{breaks_x.front(), breaks_x.back(), kLeft, plot_right};
  const Scale sy{breaks_y.front(), breaks_y.back(), kHeight - kBottom, kTop};
  auto corner = [&](std::size_t k, std::size_t m) { return corner_values[k * (Ky + 1) + m]; };

  std::ostringstream os;
  open_svg(os);

  for (std::size_t k = 0; k < Kx; ++k) {
    for (std::size_t m = 0; m < Ky; ++m) {
      const double x0 = sx(breaks_x[k]), x1 = sx(breaks_x[k + 1]);
      const double y1 = sy(breaks_y[m]), y0 = sy(breaks_y[m + 1]);  // SVG y grows downward
      if (cell_empty[k * Ky + m]) {
        os << "<rect class=\"empty-cell\" x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\""
           << num(x1 - x0) << "\" height=\"" << num(y1 - y0) << "\" fill=\"#000000\"/>\n";
        continue;
      }
      const double center = 0.25 * (corner(k, m) + corner(k + 1, m) + corner(k, m + 1) + corner(k + 1, m + 1));
      os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
         << "\" height=\"" << num(y1 - y0) << "\" fill=\"" << diverging_color(center, vlo, vhi) << "\"/>\n";
    }
  }

  draw_frame(os, title, x_label, y_label, plot_right);
  for (double v : label_positions(breaks_x.front(), breaks_x.back(), 8)) {
    os << "<text x=\"" << num(sx(v)) << "\" y=\"" << (kHeight - kBottom + 20)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(v) << "</text>\n";
  }
  for (double v : label_positions(breaks_y.front(), breaks_y.back(), 7)) {
    os << "<text x=\"" << (kLeft - 8) << "\" y=\"" << num(sy(v) + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }

  // Colorbar: fixed strip count, labels at min, zero and max.
  const double bar_x = plot_right + kBarGap;
  const int strips = 64;
  const double bar_top = kTop, bar_h = kHeight - kTop - kBottom;
  for (int s = 0; s < strips; ++s) {
    const double v = vhi - (vhi - vlo) * (s + 0.5) / strips;
    const double y = bar_top + bar_h * s / strips;
    os << "<rect x=\"" << num(bar_x) << "\" y=\"" << num(y) << "\" width=\"" << kBarWidth << "\" height=\""
       << num(bar_h / strips + 0.5) << "\" fill=\"" << diverging_color(v, vlo, vhi) << "\"/>\n";
  }
  os << "<rect x=\"" << num(bar_x) << "\" y=\"" << bar_top << "\" width=\"" << kBarWidth << "\" height=\""
     << num(bar_h) << "\" fill=\"none\" stroke=\"#444444\"/>\n";
  auto bar_label = [&](double v, double y) {
    os << "<text x=\"" << num(bar_x + kBarWidth + 6) << "\" y=\"" << num(y)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << num(v) << "</text>\n";
  };
  bar_label(vhi, bar_top + 4);
  if (vlo < 0 && vhi > 0) bar_label(0.0, bar_top + bar_h * (vhi / (vhi - vlo)) + 4);
  bar_label(vlo, bar_top + bar_h + 4);

  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '", path, "'");
  out << content;
  if (!out) fail("write to '", path, "' failed");
}

}  // namespace ale
