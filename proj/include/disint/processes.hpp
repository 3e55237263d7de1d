#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "disint/errors.hpp"
#include "disint/measure.hpp"
#include "disint/random.hpp"

namespace disint {

enum class Family {
  iid_uniform,
  exchangeable,
  regime_switching,
  submartingale,
  stochastic_volatility,
  canonical,
};

[[nodiscard]] std::string_view family_name(Family family);

// A realized sequence of measures xi_0, ..., xi_{n-1} sharing one support.
//
// Weights are stored row-major (n rows of k atoms). Positions are either one
// row shared by every step or n rows, one per step.
class MeasureSequence {
 public:
  MeasureSequence(Family family, SeedSpec seed, std::vector<int> labels, std::vector<double> weights,
                  std::vector<double> positions);

  // Two-point measures on {low, high} with weight thetas[i] on `high`.
  static MeasureSequence two_point(Family family, SeedSpec seed, int low, int high,
                                   std::span<const double> thetas);

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::size_t support_size() const { return labels_.size(); }
  [[nodiscard]] std::span<const int> labels() const { return labels_; }
  [[nodiscard]] MeasureView operator[](std::size_t i) const;
  [[nodiscard]] double weight(std::size_t i, std::size_t atom) const {
    return weights_[i * labels_.size() + atom];
  }
  [[nodiscard]] double position(std::size_t i, std::size_t atom) const {
    return shared_positions_ ? positions_[atom] : positions_[i * labels_.size() + atom];
  }
  [[nodiscard]] Family family() const { return family_; }
  [[nodiscard]] SeedSpec seed() const { return seed_; }
  // Fingerprint of family, seed and contents; identifies the source of a
  // trajectory.
  [[nodiscard]] std::uint64_t id() const { return id_; }
  [[nodiscard]] bool is_two_point() const { return labels_.size() == 2; }
  // Weight of the larger of the two labels at step i (the Bernoulli parameter).
  [[nodiscard]] double upper_weight(std::size_t i) const;

 private:
  Family family_;
  SeedSpec seed_;
  std::vector<int> labels_;
  std::vector<double> weights_;
  std::vector<double> positions_;
  bool shared_positions_ = true;
  std::size_t n_ = 0;
  std::uint64_t id_ = 0;
};

// ---- mixing distributions for exchangeable sequences ----

struct UniformMixing {};
struct PointMassMixing {
  double c = 0.5;
};
// Mass `weight_low` at `low`, the rest at `high`.
struct TwoPointMixing {
  double low = 0.0;
  double high = 1.0;
  double weight_low = 0.5;
};
using Mixing = std::variant<UniformMixing, PointMassMixing, TwoPointMixing>;

// Accepts "uniform", "point:<c>" and "two-point:<low>,<high>,<weight_low>".
// Throws ConfigError for anything else.
[[nodiscard]] Mixing parse_mixing(std::string_view text);
[[nodiscard]] std::string to_string(const Mixing& mixing);
void validate_mixing(const Mixing& mixing);

template <UniformSource G>
double draw_mixing(const Mixing& mixing, G& gen) {
  if (std::holds_alternative<UniformMixing>(mixing)) return gen.uniform();
  if (const auto* p = std::get_if<PointMassMixing>(&mixing)) return p->c;
  const auto& two = std::get<TwoPointMixing>(mixing);
  return gen.uniform() < two.weight_low ? two.low : two.high;
}

// ---- regime switching ----

// Regime 0 is the "mu" regime, regime 1 the "lambda" regime. Observations live
// on {-1, 1}; mu_up and lambda_up are the weights each regime puts on 1.
struct RegimeParams {
  StochasticMatrix2 q;
  double mu_up = 0.0;
  double lambda_up = 0.0;
};

// Throws ConventionError unless mu_up > lambda_up, DomainError for weights
// outside [0,1] and NonErgodicError for reducible q.
void validate_regime(const RegimeParams& params);

// Stationary regime chain: X_0 ~ pi, then X_{k+1} ~ q(X_k, .).
template <UniformSource G>
std::vector<std::uint8_t> regime_path(const StochasticMatrix2& q, std::size_t n, G& gen) {
  const StationaryDistribution pi = stationary_distribution(q);
  std::vector<std::uint8_t> regimes(n);
  if (n == 0) return regimes;
  std::uint8_t r = gen.uniform() < pi.pi0 ? 0 : 1;
  regimes[0] = r;
  for (std::size_t k = 1; k < n; ++k) {
    r = gen.uniform() < q(r, 0) ? 0 : 1;
    regimes[k] = r;
  }
  return regimes;
}

// ---- stochastic volatility ----

struct VolatilityParams {
  double alpha = 0.0;
  double beta = 0.0;
  double w_max = 1.0;
  int truncation_terms = 64;
};

void validate_volatility(const VolatilityParams& params);

// Latent log-volatility path H_t = alpha + beta H_{t-1} + W_t with W_t uniform
// on [-w_max, w_max] and H_0 drawn from the truncated stationary series.
struct VolatilityPath {
  std::vector<double> h;
  VolatilityParams params;
  SeedSpec seed;

  // (|alpha| + w_max) / (1 - |beta|)
  [[nodiscard]] double bound() const;
};

// Draw of alpha/(1-beta) + sum_{k<terms} beta^k W_k, the stationary law of H
// truncated after `truncation_terms` innovations.
template <UniformSource G>
double stationary_volatility_draw(const VolatilityParams& p, G& gen) {
  double series = 0.0;
  double coefficient = 1.0;
  for (int k = 0; k < p.truncation_terms && coefficient != 0.0; ++k) {
    series += coefficient * p.w_max * (2.0 * gen.uniform() - 1.0);
    coefficient *= p.beta;
  }
  return p.alpha / (1.0 - p.beta) + series;
}

// Symmetric grid of `levels` points on [-z_max, z_max].
[[nodiscard]] std::vector<double> z_grid(int levels, double z_max);

// ---- generators ----

void require_horizon(std::size_t n);

template <UniformSource G>
MeasureSequence iid_uniform_params(std::size_t n, G& gen, SeedSpec seed) {
  require_horizon(n);
  std::vector<double> thetas(n);
  for (auto& t : thetas) t = gen.uniform();
  return MeasureSequence::two_point(Family::iid_uniform, seed, 0, 1, thetas);
}

template <UniformSource G>
MeasureSequence exchangeable_params(std::size_t n, const Mixing& mixing, G& gen, SeedSpec seed) {
  require_horizon(n);
  validate_mixing(mixing);
  const std::vector<double> thetas(n, draw_mixing(mixing, gen));
  return MeasureSequence::two_point(Family::exchangeable, seed, 0, 1, thetas);
}

template <UniformSource G>
MeasureSequence regime_switching_params(const RegimeParams& params, std::size_t n, G& gen,
                                        SeedSpec seed) {
  require_horizon(n);
  validate_regime(params);
  const auto regimes = regime_path(params.q, n, gen);
  std::vector<double> thetas(n);
  for (std::size_t k = 0; k < n; ++k) {
    thetas[k] = regimes[k] == 0 ? params.mu_up : params.lambda_up;
  }
  return MeasureSequence::two_point(Family::regime_switching, seed, -1, 1, thetas);
}

// theta_0 = U_0 / 2, theta_k = theta_{k-1} + 2^{-(k+1)} U_k.
[[nodiscard]] std::vector<double> submartingale_thetas(std::span<const double> uniforms);

template <UniformSource G>
MeasureSequence submartingale_params(std::size_t n, G& gen, SeedSpec seed) {
  require_horizon(n);
  std::vector<double> u(n);
  for (auto& x : u) x = gen.uniform();
  return MeasureSequence::two_point(Family::submartingale, seed, 0, 1, submartingale_thetas(u));
}

template <UniformSource G>
VolatilityPath volatility_path(const VolatilityParams& params, std::size_t n, G& gen,
                               SeedSpec seed) {
  require_horizon(n);
  validate_volatility(params);
  VolatilityPath path{std::vector<double>(n), params, seed};
  path.h[0] = stationary_volatility_draw(params, gen);
  for (std::size_t t = 1; t < n; ++t) {
    const double w = params.w_max * (2.0 * gen.uniform() - 1.0);
    path.h[t] = params.alpha + params.beta * path.h[t - 1] + w;
  }
  return path;
}

[[nodiscard]] MeasureSequence iid_uniform_params(std::size_t n, SeedSpec seed);
[[nodiscard]] MeasureSequence exchangeable_params(std::size_t n, const Mixing& mixing, SeedSpec seed);
[[nodiscard]] MeasureSequence regime_switching_params(const RegimeParams& params, std::size_t n,
                                                      SeedSpec seed);
[[nodiscard]] MeasureSequence submartingale_params(std::size_t n, SeedSpec seed);
[[nodiscard]] VolatilityPath volatility_path(const VolatilityParams& params, std::size_t n,
                                             SeedSpec seed);

// Law of e^{h_t/2} Z at each step, Z uniform on z_grid(z_levels, z_max).
// Labels index the z-levels; positions are the realized values.
[[nodiscard]] MeasureSequence volatility_measures(const VolatilityPath& path, int z_levels,
                                                  double z_max);

// ---- process families as a closed set ----

struct IidUniformFamily {};
struct ExchangeableFamily {
  Mixing mixing;
};
struct RegimeSwitchFamily {
  RegimeParams params;
};
struct SubmartingaleFamily {};
struct VolatilityFamily {
  VolatilityParams params;
  int z_levels = 2;
  double z_max = 1.0;
};
using ProcessFamily =
    std::variant<IidUniformFamily, ExchangeableFamily, RegimeSwitchFamily, SubmartingaleFamily,
                 VolatilityFamily>;

[[nodiscard]] MeasureSequence generate(const ProcessFamily& family, std::size_t n, SeedSpec seed);
[[nodiscard]] std::string describe(const ProcessFamily& family);

}  // namespace disint
