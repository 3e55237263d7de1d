#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace disint {

// Column-oriented numeric table. Every column has the same length.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  void add_column(std::string name, std::vector<double> values);
  [[nodiscard]] std::size_t rows() const;
};

// Header line, then one line per row; values with 17 significant digits.
[[nodiscard]] std::string render_csv(const CsvTable& table);

struct ChartSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // circles instead of a polyline
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
};

inline constexpr int kSvgWidth = 960;
inline constexpr int kSvgHeight = 540;
inline constexpr std::size_t kSvgMaxPoints = 2000;

// Static SVG, viewBox 0 0 960 540. Series longer than kSvgMaxPoints are
// thinned by a fixed stride; coordinates are printed with two decimals.
[[nodiscard]] std::string render_svg(const LineChart& chart);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace disint
