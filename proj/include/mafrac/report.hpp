#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace mafrac {

/// Round-trip safe decimal rendering, 17 significant digits.
std::string csv_num(double v);

/// One CSV table with a fixed header; every row must match its width.
/// Numeric cells go through csv_num, so identical data produces identical
/// bytes.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);

  private:
    std::ofstream os;
    size_t width;
    void emit(const std::vector<std::string>& cells);
};

/// Polyline data for the plot writer.
struct SvgSeries {
    std::vector<double> x, y;
    std::string color = "#1f6fb4";
    std::string label;
};

/// Self-contained SVG 1.1 line plot: framed axes with tick labels, one
/// polyline per series, a small legend for labeled series, and optional
/// dashed vertical markers (used for section boundaries). No external
/// resources are referenced.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series,
                    const std::vector<double>& marks = {});

} // namespace mafrac
