#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "disint/measure.hpp"
#include "disint/output.hpp"
#include "disint/processes.hpp"
#include "disint/report.hpp"

namespace disint {

// Flat key=value configuration. Lines starting with '#' and blank lines are
// ignored; list values (t, t_over_n) are comma separated.
struct ExperimentConfig {
  std::string experiment;
  std::size_t n = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  StochasticMatrix2::Rows q{{{0.9, 0.1}, {0.2, 0.8}}};
  double mu1 = 0.8;
  double lambda1 = 0.3;
  double alpha = 0.0;
  double beta = 0.0;
  double w_max = 1.0;
  int z_levels = 2;
  double z_max = 1.0;
  int truncation_terms = 64;
  std::vector<double> t;                         // absolute thresholds; wins over t_over_n
  std::vector<double> t_over_n{0.55, 0.6, 0.7};  // thresholds as fractions of n
  std::string mixing = "uniform";
  std::string f = "identity";
  std::string family = "iid-uniform";
  std::string disintegration = "generated";  // or canonical
  std::string hoeffding = "conditional";     // or classical
  std::string output_dir = ".";
};

[[nodiscard]] std::span<const std::string_view> config_keys();

// Throws ConfigError for unknown keys, malformed lines or values, and
// duplicate keys within `text`. Overrides are "key=value" and replace values
// from the text.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text,
                                            std::span<const std::string> overrides = {});
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path,
                                           std::span<const std::string> overrides = {});

// Resolved configuration as ordered key/value pairs.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> config_pairs(
    const ExperimentConfig& config);

// Checks the preconditions of the operations the experiment will call.
// Throws ConfigError; NonErgodicError passes through unchanged.
void validate_config(const ExperimentConfig& config);

// identity, square, positive (1{x > 0}), indicator:v (1{x = v}), const:c,
// table:x1=y1;x2=y2 (DomainError outside the listed points).
[[nodiscard]] StateFunction parse_state_function(std::string_view spec);

// iid-uniform, exchangeable, regime-switch, submartingale or stochvol, with
// parameters taken from the config.
[[nodiscard]] ProcessFamily family_from_config(const ExperimentConfig& config);

struct ExperimentOutput {
  ExperimentReport report;
  CsvTable csv;
  LineChart chart;
};

// Runs the experiment in memory. Validates first.
[[nodiscard]] ExperimentOutput run_experiment(const ExperimentConfig& config);

struct OutputPaths {
  std::filesystem::path csv;
  std::filesystem::path svg;
  std::filesystem::path report;
};

[[nodiscard]] OutputPaths output_paths(const ExperimentConfig& config);

// run_experiment, then writes <output_dir>/<experiment>-<seed>.{csv,svg,report.txt}.
ExperimentReport run_and_write(const ExperimentConfig& config);

struct CatalogEntry {
  std::string_view name;
  std::string_view reference;
  std::string_view summary;
};

[[nodiscard]] std::span<const CatalogEntry> experiment_catalog();
// One "name — reference: summary" line per experiment.
[[nodiscard]] std::string catalog_text();
// One JSON object per line with keys name, reference, summary.
[[nodiscard]] std::string catalog_json_lines();

}  // namespace disint
