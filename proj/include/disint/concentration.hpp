#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "disint/processes.hpp"
#include "disint/random.hpp"

namespace disint {

// Which disintegration plays the role of xi when conditioning.
enum class Disintegration {
  generated,  // the measure sequence the family produced
  canonical,  // Dirac measures at the sampled values
};

// Monte Carlo check of
//   P(S_n >= t | E(S_n | xi) < t) <= exp(-2 t^2 / n)
//   P(S_n >= t) <= exp(-2 t^2 / n) + P(E(S_n | xi) >= t)
// for S_n = X_0 + ... + X_{n-1}, X_i in [0,1].
struct ConcentrationReport {
  std::string family;
  Disintegration disintegration = Disintegration::generated;
  double t = 0.0;
  std::size_t n = 0;
  std::size_t trials = 0;

  std::size_t conditioning_count = 0;       // #{E(S_n|xi) < t}
  std::size_t conditional_exceedances = 0;  // #{S_n >= t, E(S_n|xi) < t}
  std::size_t unconditional_exceedances = 0;

  double bound = 0.0;  // exp(-2 t^2 / n), exactly as printed
  // Mean of exp(-2 (t - E(S_n|xi))^2 / n) over the conditioning event: the
  // conditional bound obtained by centering Hoeffding at E(S_n|xi). Recorded
  // for comparison; not used for pass/fail.
  double centered_conditional_bound = 0.0;
  // Classical-case only: exp(-2 (t - E S_n)^2 / n), the form pass/fail uses
  // there. Zero for the conditional check.
  double classical_bound = 0.0;
  double empirical_conditional = 0.0;
  double conditioning_mass = 0.0;
  double decomposition_rhs = 0.0;  // bound + P^(E(S_n|xi) >= t)
  double empirical_unconditional = 0.0;
  double conditional_slack = 0.0;    // 3 binomial standard errors
  double unconditional_slack = 0.0;  // 3 binomial standard errors
  bool low_power = false;            // conditioning_count < 1000
  bool pass = false;
  std::string bound_form = "exp(-2 t^2 / n)";
};

inline constexpr double kBoundSlackSigmas = 3.0;
inline constexpr std::size_t kLowPowerCount = 1000;

[[nodiscard]] double hoeffding_bound(double t, std::size_t n);

// One simulation per trial shared by all thresholds. Throws DomainError when
// the family takes values outside [0,1] or a threshold is not positive, and
// DegenerateConditioningError when the conditioning event never occurs.
[[nodiscard]] std::vector<ConcentrationReport> conditional_hoeffding_sweep(
    const ProcessFamily& family, std::size_t n, std::span<const double> thresholds,
    std::size_t trials, SeedSpec seed, Disintegration disintegration = Disintegration::generated);

[[nodiscard]] ConcentrationReport conditional_hoeffding(
    const ProcessFamily& family, std::size_t n, double t, std::size_t trials, SeedSpec seed,
    Disintegration disintegration = Disintegration::generated);

// Classical case: independent uniform parameters make the X_i independent with
// E S_n = n/2, and P(S_n >= t) is compared against exp(-2 (t - n/2)^2 / n).
// Throws PreconditionError when t <= n/2.
[[nodiscard]] ConcentrationReport independent_params_unconditional(std::size_t n, double t,
                                                                   std::size_t trials,
                                                                   SeedSpec seed);

}  // namespace disint
