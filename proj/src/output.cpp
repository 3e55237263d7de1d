#include "disint/output.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "disint/errors.hpp"
#include "disint/report.hpp"

namespace disint {

namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f5fbf", "#7b2d9b", "#d1495b",
                                                  "#2a9d4b", "#e09f3e", "#444444"};

std::string fixed2(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return {buf, res.ptr};
}

std::string tick(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return {buf, res.ptr};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (lo > hi) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

void CsvTable::add_column(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != columns.front().size()) {
    throw DomainError("csv column '" + name + "' has a different length");
  }
  header.push_back(std::move(name));
  columns.push_back(std::move(values));
}

std::size_t CsvTable::rows() const { return columns.empty() ? 0 : columns.front().size(); }

std::string render_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  const std::size_t rows = table.rows();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ',';
      out += format_double(table.columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

std::string render_svg(const LineChart& chart) {
  constexpr double left = 80.0, right = 200.0, top = 50.0, bottom = 60.0;
  const double plot_w = kSvgWidth - left - right;
  const double plot_h = kSvgHeight - top - bottom;

  Range xr, yr;
  for (const auto& s : chart.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.settle();
  yr.settle();
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kSvgWidth << ' '
      << kSvgHeight << "\" width=\"" << kSvgWidth << "\" height=\"" << kSvgHeight << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kSvgWidth << "\" height=\"" << kSvgHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << fixed2(left) << "\" y=\"30\" font-family=\"sans-serif\" font-size=\"18\">"
      << escape(chart.title) << "</text>\n";
  out << "<rect x=\"" << fixed2(left) << "\" y=\"" << fixed2(top) << "\" width=\"" << fixed2(plot_w)
      << "\" height=\"" << fixed2(plot_h) << "\" fill=\"none\" stroke=\"#888888\"/>\n";

  // five ticks per axis
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const std::string lx = tick(fx);
    const std::string ly = tick(fy);
    out << "<text x=\"" << fixed2(px(fx)) << "\" y=\"" << fixed2(top + plot_h + 18)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << lx
        << "</text>\n";
    out << "<text x=\"" << fixed2(left - 6) << "\" y=\"" << fixed2(py(fy) + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << ly
        << "</text>\n";
  }
  out << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"" << kSvgHeight - 15
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">"
      << escape(chart.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << fixed2(top + plot_h / 2)
      << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 20 "
      << fixed2(top + plot_h / 2) << ")\">" << escape(chart.y_label) << "</text>\n";

  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    const char* color = kPalette[k % kPalette.size()];
    const std::size_t count = std::min(s.x.size(), s.y.size());
    const std::size_t stride = count > kSvgMaxPoints ? (count + kSvgMaxPoints - 1) / kSvgMaxPoints : 1;
    if (s.markers) {
      for (std::size_t i = 0; i < count; i += stride) {
        if (!std::isfinite(s.y[i])) continue;
        out << "<circle cx=\"" << fixed2(px(s.x[i])) << "\" cy=\"" << fixed2(py(s.y[i]))
            << "\" r=\"3\" fill=\"none\" stroke=\"" << color << "\"/>\n";
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      bool first = true;
      for (std::size_t i = 0; i < count; i += stride) {
        if (!std::isfinite(s.y[i])) continue;
        if (!first) out << ' ';
        out << fixed2(px(s.x[i])) << ',' << fixed2(py(s.y[i]));
        first = false;
      }
      if (count > 0 && (count - 1) % stride != 0 && std::isfinite(s.y[count - 1])) {
        out << ' ' << fixed2(px(s.x[count - 1])) << ',' << fixed2(py(s.y[count - 1]));
      }
      out << "\"/>\n";
    }
    const double ly = top + 20.0 * static_cast<double>(k) + 10.0;
    out << "<line x1=\"" << fixed2(left + plot_w + 15) << "\" y1=\"" << fixed2(ly) << "\" x2=\""
        << fixed2(left + plot_w + 35) << "\" y2=\"" << fixed2(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fixed2(left + plot_w + 40) << "\" y=\"" << fixed2(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.name) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw Error("failed writing " + path.string());
}

}  // namespace disint
