#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "disint/processes.hpp"
#include "disint/random.hpp"
#include "disint/report.hpp"
#include "disint/sampling.hpp"
#include "disint/stats.hpp"

namespace disint {

enum class Direction { forward, converse };

struct CharacterizationReport {
  Direction direction = Direction::forward;
  std::string family;
  std::size_t n = 0;
  std::size_t trials = 0;
  double target_p = 0.0;
  // Terminal Cesaro means of the parameter and observation series. For the
  // forward check these come from the trial with the largest deviation.
  double theta_cesaro_terminal = 0.0;
  double x_cesaro_terminal = 0.0;
  double band = 0.0;
  // |x mean - p| per trial (forward only).
  std::vector<double> deviations;
  // Series of the reported trial, for plotting.
  CesaroSeries theta_series;
  CesaroSeries x_series;
  bool pass = false;
};

// Almost-sure Cesaro limit of the parameter series when it is a constant:
// 1/2 for iid-uniform and two-point stochastic volatility, mu(1) pi_mu +
// lambda(1) pi_lambda for regime switching, c for a point-mass mixing.
[[nodiscard]] std::optional<double> known_cesaro_limit(const ProcessFamily& family);

// 0.02 for regime switching (autocorrelated), 3 sqrt(0.25 / n) otherwise.
[[nodiscard]] double forward_band(const ProcessFamily& family, std::size_t n);

// Forward direction: sample `trials` two-stage trajectories and check that the
// frequency of the upper state lands within the band of the known limit in
// every trial. Throws ConfigError when the family has no constant limit.
[[nodiscard]] CharacterizationReport check_forward(const ProcessFamily& family, std::size_t n,
                                                   std::size_t trials, SeedSpec seed);

// Converse direction via the canonical disintegration: the Cesaro series of
// theta_i = delta_{X_i}{1} and of 1{X_i = 1} must coincide bit for bit at
// every checkpoint. Throws DomainError for supports other than two points.
[[nodiscard]] CharacterizationReport check_converse(const ProcessFamily& family, std::size_t n,
                                                    SeedSpec seed);

// Same check applied to an already sampled trajectory.
[[nodiscard]] CharacterizationReport check_converse(const Trajectory& t,
                                                    std::span<const std::size_t> checkpoints);

struct LimitDistributionReport {
  std::string reference = "uniform[0,1]";
  std::vector<double> terminal_means;
  std::vector<double> drawn_thetas;
  double ks_distance = 0.0;
  double ks_threshold = 0.0;
  double across_trial_stddev = 0.0;
  // Fraction of trials with |mean - theta| <= 3 sqrt(theta (1 - theta) / n).
  double conditional_band_fraction = 0.0;
  bool pass = false;
};

inline constexpr double kExchangeableKsThreshold = 0.05;

// Terminal means of exchangeable sequences against the uniform law. Throws
// DomainError for fewer than 100 trials.
[[nodiscard]] LimitDistributionReport exchangeable_limit_distribution(
    const Mixing& mixing, std::size_t n, std::size_t trials, SeedSpec seed,
    double ks_threshold = kExchangeableKsThreshold);

struct RandomWalkResult {
  ExperimentReport report;
  std::vector<std::size_t> up_counts;  // number of +1 steps per trial
  std::vector<int> first_path;         // Z_k of trial 0
};

// Z = 2X - 1 on top of iid-uniform parameters. `antithetic` mirrors every
// uniform draw (u -> 1 - u) of both stages.
[[nodiscard]] RandomWalkResult random_walk_symmetry(std::size_t n, std::size_t trials,
                                                    SeedSpec seed, bool antithetic = false);

struct ResidualDecayReport {
  std::string family;
  std::string f_tag;
  std::size_t n = 0;
  std::size_t runs = 0;
  std::vector<std::size_t> checkpoints;
  // |partial mean of f(X_i) - xi_i(f)| at each checkpoint, one row per run.
  std::vector<std::vector<double>> abs_partial_means;
  double band = 0.0;  // 4 sqrt(0.25 / n)
  double worst_terminal = 0.0;
  std::size_t terminal_within_band = 0;
  // Runs whose |partial mean| is non-increasing over all checkpoints.
  double monotone_fraction = 0.0;
  // Runs whose last checkpoint value is at most the first one. Diagnostic.
  double endpoint_fraction = 0.0;
  bool terminal_pass = false;  // every run within band at n
  bool monotone_pass = false;  // monotone_fraction >= kResidualMonotoneFraction
  bool pass = false;
};

inline constexpr double kResidualMonotoneFraction = 0.9;

// Checkpoints 10^2, 10^3, ... below n, then n.
[[nodiscard]] std::vector<std::size_t> residual_checkpoints(std::size_t n);

// Residual series of `runs` independent two-stage trajectories, run i using
// trial_seeds(seed, i).
[[nodiscard]] ResidualDecayReport residual_decay(const ProcessFamily& family,
                                                 const StateFunction& f, std::string f_tag,
                                                 std::size_t n, std::size_t runs, SeedSpec seed);

}  // namespace disint
