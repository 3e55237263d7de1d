#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace disint {

// One checked quantity: pass means |value - target| <= band unless the
// producer states another rule in `rule`.
struct Metric {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double band = 0.0;
  bool pass = false;
  std::string rule = "abs(value - target) <= band";
};

[[nodiscard]] Metric within_band(std::string name, double value, double target, double band);
[[nodiscard]] Metric at_most(std::string name, double value, double bound);
[[nodiscard]] Metric at_least(std::string name, double value, double bound);

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Metric> metrics;
  std::vector<std::string> notes;
  double wall_time_seconds = 0.0;
  std::uint64_t seed = 0;

  // Conjunction of metric passes.
  [[nodiscard]] bool pass() const;
  [[nodiscard]] const Metric& metric(const std::string& name) const;
};

// key=value text rendering written next to the CSV output.
[[nodiscard]] std::string format_report(const ExperimentReport& report);

// Same digits as printf("%.17g"), independent of the C locale.
[[nodiscard]] std::string format_double(double value);

}  // namespace disint
