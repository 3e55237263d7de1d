#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "disint/measure.hpp"
#include "disint/processes.hpp"
#include "disint/random.hpp"

namespace disint {

// Time average of f(X) against the value of a latent functional.
struct LatentEstimateReport {
  double estimator = 0.0;
  double target = 0.0;
  double oracle = 0.0;
  double abs_error = 0.0;  // |estimator - target|
  std::size_t n = 0;
  SeedSpec estimator_seed;
  SeedSpec oracle_seed;
};

// mu_up pi_0 + lambda_up pi_1. Needs only an ergodic q, so equal weights are
// accepted here even though the generator rejects them.
[[nodiscard]] double regime_functional_target(const StochasticMatrix2& q, double mu_up,
                                              double lambda_up);

inline constexpr std::size_t kRegimeOracleSteps = 1'000'000;
inline constexpr std::size_t kVolatilityOracleDraws = 1'000'000;

// Frequency of the up state in one regime-switching trajectory. The target is
// mu(1) pi_mu + lambda(1) pi_lambda; the oracle averages the per-step
// parameter over a separate regime chain of `oracle_steps` steps.
[[nodiscard]] LatentEstimateReport estimate_regime_functional(
    const RegimeParams& params, std::size_t n, SeedSpec seed,
    std::size_t oracle_steps = kRegimeOracleSteps);

// Empirical frequencies of consecutive regime pairs (r_k, r_{k+1}).
using PairMatrix = std::array<std::array<double, 2>, 2>;
[[nodiscard]] PairMatrix regime_pair_frequencies(std::span<const std::uint8_t> regimes);
// pi_i q_ij
[[nodiscard]] PairMatrix regime_pair_law(const StochasticMatrix2& q);
// Joint law of (X_k, X_{k+1}) over {-1,1}^2; index 0 is -1, index 1 is +1.
[[nodiscard]] PairMatrix observation_pair_law(const RegimeParams& params);

struct SubmartingaleEstimate {
  LatentEstimateReport report;  // target = theta_{n-1}, oracle = mean of theta
  std::vector<double> theta;
  std::vector<int> x;
  std::vector<double> running_mean;  // (X_0 + ... + X_k) / (k + 1)
  double band = 0.0;                 // 3 sqrt(0.25/n) + 2^{-(n+1)}
  bool pass = false;
};

[[nodiscard]] SubmartingaleEstimate estimate_submartingale_limit(std::size_t n, SeedSpec seed);
// Same estimate over a given parameter sequence (two-point on {0,1}).
[[nodiscard]] SubmartingaleEstimate estimate_submartingale_limit(const MeasureSequence& thetas,
                                                                 SeedSpec sampling_seed);

struct VolatilityEstimate {
  LatentEstimateReport report;  // target = oracle
  VolatilityPath path;
  std::vector<double> x;
  std::vector<double> running_mean;  // of f(X)
};

// g(h) = sum_j f(e^{h/2} z_j) / levels, the conditional mean of f(X) given H = h.
[[nodiscard]] double volatility_g(double h, const std::vector<double>& z, const StateFunction& f);

// Estimator: time average of f(X_t). Oracle: mean of g(H) over
// `oracle_draws` independent stationary draws of H from the oracle stream.
[[nodiscard]] VolatilityEstimate estimate_volatility_functional(
    const VolatilityParams& params, int z_levels, double z_max, const StateFunction& f,
    std::size_t n, SeedSpec seed, std::size_t oracle_draws = kVolatilityOracleDraws);

}  // namespace disint
