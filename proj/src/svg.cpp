#include "modrec/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace modrec {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 50;
constexpr int kMarginBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

struct AxisRange {
  double lo = 0.0, hi = 1.0;
};

AxisRange fit_range(double lo, double hi) {
  if (!(hi > lo)) {
    hi = lo + 1.0;
    lo -= 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

double map_x(double x, const AxisRange& r) {
  return kMarginLeft + (x - r.lo) / (r.hi - r.lo) * (kWidth - kMarginLeft - kMarginRight);
}

double map_y(double y, const AxisRange& r) {
  return kHeight - kMarginBottom -
         (y - r.lo) / (r.hi - r.lo) * (kHeight - kMarginTop - kMarginBottom);
}

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

void draw_axes(std::ostringstream& os, const std::string& x_label, const std::string& y_label,
               const AxisRange& xr, const AxisRange& yr) {
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\""
     << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
     << "\" y2=\"" << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    const double px = map_x(fx, xr);
    const double py = map_y(fy, yr);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\""
       << num(px) << "\" y2=\"" << kHeight - kMarginBottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << kHeight - kMarginBottom + 20
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(fx)
       << "</text>\n";
    os << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << kMarginLeft
       << "\" y2=\"" << num(py) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(fy)
       << "</text>\n";
  }
  os << "<text x=\"" << (kMarginLeft + kWidth - kMarginRight) / 2 << "\" y=\"" << kHeight - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
     << "</text>\n";
  os << "<text x=\"18\" y=\"" << (kMarginTop + kHeight - kMarginBottom) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << (kMarginTop + kHeight - kMarginBottom) / 2 << ")\">"
     << y_label << "</text>\n";
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              const std::vector<PlotSeries>& series) {
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  bool first = true;
  for (const PlotSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        xlo = xhi = x;
        ylo = yhi = y;
        first = false;
      }
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  const AxisRange xr = fit_range(xlo, xhi);
  const AxisRange yr = fit_range(ylo, yhi);

  std::ostringstream os;
  open_svg(os, title);
  draw_axes(os, x_label, y_label, xr, yr);

  for (size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : series[si].points) {
      os << num(map_x(x, xr)) << ',' << num(map_y(y, yr)) << ' ';
    }
    os << "\"/>\n";
    for (const auto& [x, y] : series[si].points) {
      os << "<circle cx=\"" << num(map_x(x, xr)) << "\" cy=\"" << num(map_y(y, yr))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    os << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\"" << kMarginTop + 16 * (si + 1)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
       << "\">" << series[si].name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_heatmap(const std::string& title, const std::vector<std::string>& labels,
                           const std::vector<std::vector<double>>& matrix) {
  const int n = static_cast<int>(labels.size());
  const double cell = std::min((kWidth - kMarginLeft - kMarginRight) / static_cast<double>(n),
                               (kHeight - kMarginTop - kMarginBottom) / static_cast<double>(n));

  std::ostringstream os;
  open_svg(os, title);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double v = std::clamp(matrix[static_cast<size_t>(r)][static_cast<size_t>(c)], 0.0, 1.0);
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      const double x = kMarginLeft + c * cell;
      const double y = kMarginTop + r * cell;
      os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cell)
         << "\" height=\"" << num(cell) << "\" fill=\"rgb(" << shade << ',' << shade
         << ",255)\" stroke=\"#ddd\"/>\n";
      if (v >= 0.005) {
        os << "<text x=\"" << num(x + cell / 2) << "\" y=\"" << num(y + cell / 2 + 3)
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"8\">"
           << fixed1(100.0 * v) << "</text>\n";
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    os << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << num(kMarginTop + i * cell + cell / 2 + 3)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"9\">"
       << labels[static_cast<size_t>(i)] << "</text>\n";
    os << "<text x=\"" << num(kMarginLeft + i * cell + cell / 2) << "\" y=\""
       << num(kMarginTop + n * cell + 12)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\" "
       << "transform=\"rotate(45 " << num(kMarginLeft + i * cell + cell / 2) << ' '
       << num(kMarginTop + n * cell + 12) << ")\">" << labels[static_cast<size_t>(i)]
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_scatter(const std::string& title, const std::string& x_label,
                           const std::string& y_label,
                           const std::vector<std::pair<double, double>>& points) {
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  bool first = true;
  for (const auto& [x, y] : points) {
    if (first) {
      xlo = xhi = x;
      ylo = yhi = y;
      first = false;
    }
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  const AxisRange xr = fit_range(xlo, xhi);
  const AxisRange yr = fit_range(ylo, yhi);

  std::ostringstream os;
  open_svg(os, title);
  draw_axes(os, x_label, y_label, xr, yr);
  for (const auto& [x, y] : points) {
    os << "<circle cx=\"" << num(map_x(x, xr)) << "\" cy=\"" << num(map_y(y, yr))
       << "\" r=\"4\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace modrec
