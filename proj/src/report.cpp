#include "disint/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "disint/errors.hpp"

namespace disint {

Metric within_band(std::string name, double value, double target, double band) {
  return {std::move(name), value, target, band, std::abs(value - target) <= band};
}

Metric at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, value <= bound, "value <= target"};
}

Metric at_least(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, value >= bound, "value >= target"};
}

bool ExperimentReport::pass() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.pass; });
}

const Metric& ExperimentReport::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw DomainError("report has no metric '" + name + "'");
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string format_report(const ExperimentReport& report) {
  std::ostringstream out;
  out << "experiment=" << report.experiment << '\n';
  out << "seed=" << report.seed << '\n';
  for (const auto& [key, value] : report.config) out << "config." << key << '=' << value << '\n';
  for (const auto& m : report.metrics) {
    out << "metric." << m.name << ".value=" << format_double(m.value) << '\n';
    out << "metric." << m.name << ".target=" << format_double(m.target) << '\n';
    out << "metric." << m.name << ".band=" << format_double(m.band) << '\n';
    out << "metric." << m.name << ".rule=" << m.rule << '\n';
    out << "metric." << m.name << ".pass=" << (m.pass ? "true" : "false") << '\n';
  }
  for (const auto& note : report.notes) out << "note=" << note << '\n';
  out << "wall_time_seconds=" << format_double(report.wall_time_seconds) << '\n';
  out << "pass=" << (report.pass() ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace disint
