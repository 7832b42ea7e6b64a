#include "zonal/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace zonal {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fix2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void absorb(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double at(double v, double px_lo, double px_hi) const {
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

void header(std::ostringstream& o, int width, int height) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
    << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
    << height << "\">\n";
  o << "<rect width=\"" << width << "\" height=\"" << height
    << "\" fill=\"white\"/>\n";
}

}  // namespace

std::string svg_line_chart(const std::vector<SvgSeries>& series,
                           const std::string& title, int width, int height) {
  const double ml = 64, mr = 16, mt = 32, mb = 40;
  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.absorb(v);
    for (double v : s.y) ry.absorb(v);
  }
  rx.finish();
  ry.finish();
  std::ostringstream o;
  header(o, width, height);
  o << "<text x=\"" << fix2(width / 2.0)
    << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">"
    << title << "</text>\n";
  // frame
  o << "<rect x=\"" << fix2(ml) << "\" y=\"" << fix2(mt) << "\" width=\""
    << fix2(width - ml - mr) << "\" height=\"" << fix2(height - mt - mb)
    << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  // range labels
  o << "<text x=\"" << fix2(ml) << "\" y=\"" << fix2(height - mb + 16.0)
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << label(rx.lo)
    << "</text>\n";
  o << "<text x=\"" << fix2(width - mr)
    << "\" y=\"" << fix2(height - mb + 16.0)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << label(rx.hi) << "</text>\n";
  o << "<text x=\"" << fix2(ml - 6.0) << "\" y=\"" << fix2(height - mb)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << label(ry.lo) << "</text>\n";
  o << "<text x=\"" << fix2(ml - 6.0) << "\" y=\"" << fix2(mt + 10.0)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << label(ry.hi) << "</text>\n";
  int idx = 0;
  for (const auto& s : series) {
    const char* color = kPalette[idx % 8];
    o << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (i) o << ' ';
      o << fix2(rx.at(s.x[i], ml, width - mr)) << ','
        << fix2(ry.at(s.y[i], height - mb, mt));
    }
    o << "\"/>\n";
    if (!s.label.empty()) {
      double yy = mt + 16.0 + 16.0 * idx;
      o << "<text x=\"" << fix2(ml + 10.0) << "\" y=\"" << fix2(yy)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color
        << "\">" << s.label << "</text>\n";
    }
    ++idx;
  }
  o << "</svg>\n";
  return o.str();
}

std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        double x0, double x1, double y0, double y1,
                        const std::string& title, int width, int height) {
  const double ml = 64, mr = 16, mt = 32, mb = 40;
  Range rv;
  for (const auto& row : values)
    for (double v : row) rv.absorb(v);
  rv.finish();
  const double amp = std::max(std::fabs(rv.lo), std::fabs(rv.hi));
  std::ostringstream o;
  header(o, width, height);
  o << "<text x=\"" << fix2(width / 2.0)
    << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"14\">"
    << title << "</text>\n";
  const std::size_t rows = values.size();
  const std::size_t cols = rows ? values[0].size() : 0;
  const double pw = (width - ml - mr) / double(cols ? cols : 1);
  const double ph = (height - mt - mb) / double(rows ? rows : 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < values[i].size(); ++j) {
      double s = amp > 0.0 ? values[i][j] / amp : 0.0;  // in [-1, 1]
      s = std::max(-1.0, std::min(1.0, s));
      int r = 255, g = 255, b = 255;
      if (s >= 0.0) {  // white -> red
        g = b = int(std::lround(255.0 * (1.0 - s)));
      } else {  // white -> blue
        r = g = int(std::lround(255.0 * (1.0 + s)));
      }
      o << "<rect x=\"" << fix2(ml + pw * double(j)) << "\" y=\""
        << fix2(height - mb - ph * double(i + 1)) << "\" width=\""
        << fix2(pw + 0.5) << "\" height=\"" << fix2(ph + 0.5)
        << "\" fill=\"rgb(" << r << ',' << g << ',' << b << ")\"/>\n";
    }
  }
  o << "<rect x=\"" << fix2(ml) << "\" y=\"" << fix2(mt) << "\" width=\""
    << fix2(width - ml - mr) << "\" height=\"" << fix2(height - mt - mb)
    << "\" fill=\"none\" stroke=\"#333333\"/>\n";
  o << "<text x=\"" << fix2(ml) << "\" y=\"" << fix2(height - mb + 16.0)
    << "\" font-family=\"sans-serif\" font-size=\"11\">" << label(x0)
    << "</text>\n";
  o << "<text x=\"" << fix2(width - mr) << "\" y=\""
    << fix2(height - mb + 16.0)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << label(x1) << "</text>\n";
  o << "<text x=\"" << fix2(ml - 6.0) << "\" y=\"" << fix2(height - mb)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << label(y0) << "</text>\n";
  o << "<text x=\"" << fix2(ml - 6.0) << "\" y=\"" << fix2(mt + 10.0)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << label(y1) << "</text>\n";
  o << "<text x=\"" << fix2(width - mr) << "\" y=\"" << fix2(mt + 10.0)
    << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
    << "range " << label(rv.lo) << " .. " << label(rv.hi) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace zonal
