#include "disint/latent.hpp"

#include <cmath>

#include "disint/errors.hpp"
#include "disint/sampling.hpp"

namespace disint {

double regime_functional_target(const StochasticMatrix2& q, double mu_up, double lambda_up) {
  const auto pi = stationary_distribution(q);
  return mu_up * pi.pi0 + lambda_up * pi.pi1;
}

LatentEstimateReport estimate_regime_functional(const RegimeParams& params, std::size_t n,
                                                SeedSpec seed, std::size_t oracle_steps) {
  validate_regime(params);
  require_horizon(n);
  const TrialSeeds s = trial_seeds(seed, 0);
  const MeasureSequence ms = regime_switching_params(params, n, s.params);
  const Trajectory t = sample_conditional(ms, s.sampling);

  LatentEstimateReport r;
  r.n = n;
  r.estimator_seed = s.params;
  r.oracle_seed = oracle_seed(seed, 0);
  double ups = 0.0;
  for (int x : t.labels) ups += x == 1 ? 1.0 : 0.0;
  r.estimator = ups / static_cast<double>(n);

  r.target = regime_functional_target(params.q, params.mu_up, params.lambda_up);

  Stream oracle_stream(r.oracle_seed);
  const auto regimes = regime_path(params.q, oracle_steps, oracle_stream);
  double acc = 0.0;
  for (auto reg : regimes) acc += reg == 0 ? params.mu_up : params.lambda_up;
  r.oracle = acc / static_cast<double>(oracle_steps);
  r.abs_error = std::abs(r.estimator - r.target);
  return r;
}

PairMatrix regime_pair_frequencies(std::span<const std::uint8_t> regimes) {
  PairMatrix m{};
  if (regimes.size() < 2) throw DomainError("pair frequencies need at least two steps");
  for (std::size_t k = 0; k + 1 < regimes.size(); ++k) m[regimes[k]][regimes[k + 1]] += 1.0;
  const double pairs = static_cast<double>(regimes.size() - 1);
  for (auto& row : m) {
    for (auto& v : row) v /= pairs;
  }
  return m;
}

PairMatrix regime_pair_law(const StochasticMatrix2& q) {
  const auto pi = stationary_distribution(q);
  const double p[2] = {pi.pi0, pi.pi1};
  PairMatrix m{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) m[i][j] = p[i] * q(i, j);
  }
  return m;
}

PairMatrix observation_pair_law(const RegimeParams& params) {
  const PairMatrix regimes = regime_pair_law(params.q);
  // weight regime r puts on observation index x (0 -> -1, 1 -> +1)
  auto w = [&](int r, int x) {
    const double up = r == 0 ? params.mu_up : params.lambda_up;
    return x == 1 ? up : 1.0 - up;
  };
  PairMatrix m{};
  for (int x0 = 0; x0 < 2; ++x0) {
    for (int x1 = 0; x1 < 2; ++x1) {
      for (int r0 = 0; r0 < 2; ++r0) {
        for (int r1 = 0; r1 < 2; ++r1) m[x0][x1] += w(r0, x0) * w(r1, x1) * regimes[r0][r1];
      }
    }
  }
  return m;
}

SubmartingaleEstimate estimate_submartingale_limit(const MeasureSequence& thetas,
                                                   SeedSpec sampling_seed) {
  if (!thetas.is_two_point()) throw DomainError("submartingale estimate needs a two-point sequence");
  const std::size_t n = thetas.size();
  const Trajectory t = sample_conditional(thetas, sampling_seed);

  SubmartingaleEstimate out;
  out.theta.resize(n);
  out.x.resize(n);
  out.running_mean.resize(n);
  double heads = 0.0;
  double theta_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.theta[k] = thetas.upper_weight(k);
    out.x[k] = t.labels[k];
    heads += t.labels[k];
    theta_sum += out.theta[k];
    out.running_mean[k] = heads / static_cast<double>(k + 1);
  }

  const double nd = static_cast<double>(n);
  out.band = 3.0 * std::sqrt(0.25 / nd) +
             std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n + 1, 2000)));
  out.report.n = n;
  out.report.estimator = out.running_mean.back();
  out.report.target = out.theta.back();
  out.report.oracle = theta_sum / nd;
  out.report.abs_error = std::abs(out.report.estimator - out.report.target);
  out.report.estimator_seed = thetas.seed();
  out.report.oracle_seed = thetas.seed();
  out.pass = out.report.abs_error <= out.band;
  return out;
}

SubmartingaleEstimate estimate_submartingale_limit(std::size_t n, SeedSpec seed) {
  const TrialSeeds s = trial_seeds(seed, 0);
  return estimate_submartingale_limit(submartingale_params(n, s.params), s.sampling);
}

double volatility_g(double h, const std::vector<double>& z, const StateFunction& f) {
  const double scale = std::exp(h / 2.0);
  double acc = 0.0;
  for (double zj : z) acc += f(scale * zj);
  return acc / static_cast<double>(z.size());
}

VolatilityEstimate estimate_volatility_functional(const VolatilityParams& params, int z_levels,
                                                  double z_max, const StateFunction& f,
                                                  std::size_t n, SeedSpec seed,
                                                  std::size_t oracle_draws) {
  validate_volatility(params);
  require_horizon(n);
  if (oracle_draws < 1) throw DomainError("oracle_draws must be >= 1");
  const std::vector<double> z = z_grid(z_levels, z_max);
  const TrialSeeds s = trial_seeds(seed, 0);

  VolatilityEstimate out;
  out.path = volatility_path(params, n, s.params);
  const MeasureSequence ms = volatility_measures(out.path, z_levels, z_max);
  const Trajectory t = sample_conditional(ms, s.sampling);
  out.x = t.values;
  out.running_mean.resize(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += f(t.values[k]);
    out.running_mean[k] = acc / static_cast<double>(k + 1);
  }

  LatentEstimateReport& r = out.report;
  r.n = n;
  r.estimator = out.running_mean.back();
  r.estimator_seed = s.params;
  r.oracle_seed = oracle_seed(seed, 0);
  Stream oracle_stream(r.oracle_seed);
  double g_sum = 0.0;
  for (std::size_t d = 0; d < oracle_draws; ++d) {
    g_sum += volatility_g(stationary_volatility_draw(params, oracle_stream), z, f);
  }
  r.oracle = g_sum / static_cast<double>(oracle_draws);
  r.target = r.oracle;
  r.abs_error = std::abs(r.estimator - r.target);
  return out;
}

}  // namespace disint
