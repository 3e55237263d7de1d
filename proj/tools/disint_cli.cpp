#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "disint/errors.hpp"
#include "disint/experiments.hpp"

namespace {

enum ExitCode : int { kPass = 0, kFail = 1, kInvalidConfig = 2, kDegenerate = 3 };

int run_command(const std::string& config_path, const std::vector<std::string>& overrides) {
  try {
    const disint::ExperimentConfig config = disint::load_config(config_path, overrides);
    const disint::ExperimentReport report = disint::run_and_write(config);
    const auto paths = disint::output_paths(config);
    std::cout << disint::format_report(report);
    std::cout << "csv=" << paths.csv.string() << '\n';
    std::cout << "svg=" << paths.svg.string() << '\n';
    std::cout << "report=" << paths.report.string() << '\n';
    return report.pass() ? kPass : kFail;
  } catch (const disint::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const disint::NonErgodicError& e) {
    std::cerr << "degenerate: " << e.what() << '\n';
    return kDegenerate;
  } catch (const disint::DegenerateConditioningError& e) {
    std::cerr << "degenerate: " << e.what() << '\n';
    return kDegenerate;
  } catch (const disint::DomainError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage conditionally independent sequence experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run one experiment from a key=value config file");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--set", overrides, "Override a config entry, key=value")->take_all();

  bool json_lines = false;
  auto* list = app.add_subcommand("list", "List the available experiments");
  list->add_flag("--json-lines", json_lines, "One JSON record per experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidConfig;
  }

  if (*list) {
    std::cout << (json_lines ? disint::catalog_json_lines() : disint::catalog_text());
    return kPass;
  }
  try {
    return run_command(config_path, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
}
