#pragma once

#include <string>
#include <vector>

namespace zonal {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Static line chart: each series becomes one polyline, with axes and range
// labels. Coordinates are printed with fixed precision so output is
// byte-stable across runs.
std::string svg_line_chart(const std::vector<SvgSeries>& series,
                           const std::string& title, int width = 640,
                           int height = 400);

// Static heatmap of values[i][j] (row i along y, column j along x) over the
// rectangle [x0,x1] x [y0,y1], on a symmetric blue-white-red scale.
std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        double x0, double x1, double y0, double y1,
                        const std::string& title, int width = 640,
                        int height = 480);

}  // namespace zonal
