#ifndef ALE_SVG_HPP
#define ALE_SVG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ale {

/// Deterministic SVG output: fixed canvas, fixed palette, %.6g numbers.
/// Identical inputs yield byte-identical files.

struct LineSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<double>& ticks,
                              const std::vector<LineSeries>& series);

/// Heatmap over a quantile grid: each cell is filled at its center value
/// (the bilinear interpolation of its four corner values); empty cells get
/// a black overlay rect with class "empty-cell"; a vertical colorbar maps
/// the value range.
std::string render_heatmap(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<double>& breaks_x,
                           const std::vector<double>& breaks_y,
                           const std::vector<double>& corner_values,  // row-major (Kx+1)*(Ky+1)
                           const std::vector<std::uint8_t>& cell_empty);  // row-major Kx*Ky

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ale

#endif  // ALE_SVG_HPP
