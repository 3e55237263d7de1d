#include "disint/lln.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "disint/errors.hpp"
#include "disint/parallel.hpp"

namespace disint {

namespace {

std::vector<double> upper_weights(const MeasureSequence& ms) {
  std::vector<double> out(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) out[i] = ms.upper_weight(i);
  return out;
}

bool bitwise_equal(const CesaroSeries& a, const CesaroSeries& b) {
  if (a.checkpoints.size() != b.checkpoints.size() || a.terminal_n != b.terminal_n) return false;
  for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
    if (a.checkpoints[i].n != b.checkpoints[i].n ||
        std::bit_cast<std::uint64_t>(a.checkpoints[i].partial_mean) !=
            std::bit_cast<std::uint64_t>(b.checkpoints[i].partial_mean)) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::optional<double> known_cesaro_limit(const ProcessFamily& family) {
  if (std::holds_alternative<IidUniformFamily>(family)) return 0.5;
  if (const auto* r = std::get_if<RegimeSwitchFamily>(&family)) {
    const auto pi = stationary_distribution(r->params.q);
    return r->params.mu_up * pi.pi0 + r->params.lambda_up * pi.pi1;
  }
  if (const auto* e = std::get_if<ExchangeableFamily>(&family)) {
    if (const auto* p = std::get_if<PointMassMixing>(&e->mixing)) return p->c;
    if (const auto* t = std::get_if<TwoPointMixing>(&e->mixing); t && t->low == t->high) {
      return t->low;
    }
    return std::nullopt;
  }
  if (const auto* v = std::get_if<VolatilityFamily>(&family); v && v->z_levels == 2) return 0.5;
  return std::nullopt;
}

double forward_band(const ProcessFamily& family, std::size_t n) {
  if (std::holds_alternative<RegimeSwitchFamily>(family)) return 0.02;
  return 3.0 * std::sqrt(0.25 / static_cast<double>(n));
}

CharacterizationReport check_forward(const ProcessFamily& family, std::size_t n,
                                     std::size_t trials, SeedSpec seed) {
  const auto limit = known_cesaro_limit(family);
  if (!limit) {
    throw ConfigError("family " + describe(family) + " has no constant Cesaro limit");
  }
  if (trials < 1) throw DomainError("trials must be >= 1");
  require_horizon(n);

  const auto checkpoints = default_checkpoints(n);
  struct TrialResult {
    CesaroSeries theta;
    CesaroSeries x;
  };
  std::vector<TrialResult> results(trials);
  parallel_for(trials, [&](std::size_t i) {
    const TrialSeeds s = trial_seeds(seed, i);
    const MeasureSequence ms = generate(family, n, s.params);
    const Trajectory t = sample_conditional(ms, s.sampling);
    results[i].theta = cesaro_series(upper_weights(ms), checkpoints);
    results[i].x = cesaro_series(upper_indicator(t), checkpoints);
  });

  CharacterizationReport report;
  report.direction = Direction::forward;
  report.family = describe(family);
  report.n = n;
  report.trials = trials;
  report.target_p = *limit;
  report.band = forward_band(family, n);
  report.deviations.reserve(trials);
  std::size_t worst = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    report.deviations.push_back(std::abs(results[i].x.terminal_mean() - *limit));
    if (report.deviations[i] > report.deviations[worst]) worst = i;
  }
  report.theta_cesaro_terminal = results[worst].theta.terminal_mean();
  report.x_cesaro_terminal = results[worst].x.terminal_mean();
  report.theta_series = std::move(results[worst].theta);
  report.x_series = std::move(results[worst].x);
  report.pass = report.deviations[worst] <= report.band;
  return report;
}

CharacterizationReport check_converse(const Trajectory& t,
                                      std::span<const std::size_t> checkpoints) {
  if (t.state_space.size() != 2) {
    throw DomainError("converse check needs a two-point (Bernoulli) state space");
  }
  const MeasureSequence canonical = canonical_disintegration(t);

  CharacterizationReport report;
  report.direction = Direction::converse;
  report.family = "canonical";
  report.n = t.size();
  report.trials = 1;
  report.theta_series = cesaro_series(upper_weights(canonical), checkpoints);
  report.x_series = cesaro_series(upper_indicator(t), checkpoints);
  report.theta_cesaro_terminal = report.theta_series.terminal_mean();
  report.x_cesaro_terminal = report.x_series.terminal_mean();
  report.target_p = report.x_cesaro_terminal;
  report.band = 0.0;
  report.pass = bitwise_equal(report.theta_series, report.x_series);
  return report;
}

CharacterizationReport check_converse(const ProcessFamily& family, std::size_t n, SeedSpec seed) {
  require_horizon(n);
  const TrialSeeds s = trial_seeds(seed, 0);
  const MeasureSequence ms = generate(family, n, s.params);
  if (!ms.is_two_point()) {
    throw DomainError("converse check needs a two-point (Bernoulli) state space");
  }
  const auto checkpoints = default_checkpoints(n);
  CharacterizationReport report = check_converse(sample_conditional(ms, s.sampling), checkpoints);
  report.family = describe(family);
  return report;
}

LimitDistributionReport exchangeable_limit_distribution(const Mixing& mixing, std::size_t n,
                                                        std::size_t trials, SeedSpec seed,
                                                        double ks_threshold) {
  if (trials < 100) throw DomainError("limit distribution needs at least 100 trials");
  require_horizon(n);
  validate_mixing(mixing);

  LimitDistributionReport report;
  report.terminal_means.resize(trials);
  report.drawn_thetas.resize(trials);
  parallel_for(trials, [&](std::size_t i) {
    const TrialSeeds s = trial_seeds(seed, i);
    const MeasureSequence ms = exchangeable_params(n, mixing, s.params);
    const Trajectory t = sample_conditional(ms, s.sampling);
    double ones = 0.0;
    for (int x : t.labels) ones += x;
    report.drawn_thetas[i] = ms.upper_weight(0);
    report.terminal_means[i] = ones / static_cast<double>(n);
  });

  report.ks_threshold = ks_threshold;
  report.ks_distance = empirical_cdf_distance(report.terminal_means, uniform01_cdf);
  report.across_trial_stddev = summarize(report.terminal_means).stddev;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double theta = report.drawn_thetas[i];
    const double band = 3.0 * std::sqrt(theta * (1.0 - theta) / static_cast<double>(n));
    if (std::abs(report.terminal_means[i] - theta) <= band) ++inside;
  }
  report.conditional_band_fraction = static_cast<double>(inside) / static_cast<double>(trials);
  report.pass = report.ks_distance <= ks_threshold;
  return report;
}

RandomWalkResult random_walk_symmetry(std::size_t n, std::size_t trials, SeedSpec seed,
                                      bool antithetic) {
  require_horizon(n);
  if (trials < 1) throw DomainError("trials must be >= 1");

  RandomWalkResult result;
  result.up_counts.resize(trials);
  std::vector<std::vector<int>> paths(trials);
  parallel_for(trials, [&](std::size_t i) {
    const TrialSeeds s = trial_seeds(seed, i);
    Stream param_stream(s.params);
    Stream sample_stream(s.sampling);
    Trajectory t;
    if (antithetic) {
      Antithetic<Stream> params(param_stream);
      Antithetic<Stream> draws(sample_stream);
      t = sample_conditional(iid_uniform_params(n, params, s.params), draws, s.sampling);
    } else {
      t = sample_conditional(iid_uniform_params(n, param_stream, s.params), sample_stream,
                             s.sampling);
    }
    std::size_t ups = 0;
    for (int x : t.labels) ups += static_cast<std::size_t>(x);
    result.up_counts[i] = ups;
    if (i == 0) {
      paths[0].resize(n);
      for (std::size_t k = 0; k < n; ++k) paths[0][k] = 2 * t.labels[k] - 1;
    }
  });
  result.first_path = std::move(paths[0]);

  const double nd = static_cast<double>(n);
  const double band = 3.0 * std::sqrt(0.25 / nd);
  std::size_t worst = 0;
  for (std::size_t i = 1; i < trials; ++i) {
    const auto dev = [&](std::size_t j) {
      return std::abs(static_cast<double>(result.up_counts[j]) / nd - 0.5);
    };
    if (dev(i) > dev(worst)) worst = i;
  }
  const double freq = static_cast<double>(result.up_counts[worst]) / nd;
  const double s_over_n = (2.0 * static_cast<double>(result.up_counts[worst]) - nd) / nd;

  ExperimentReport& report = result.report;
  report.experiment = "random-walk";
  report.seed = seed.base_seed;
  report.metrics.push_back(within_band("freq_plus_one", freq, 0.5, band));
  report.metrics.push_back(within_band("s_n_over_n", s_over_n, 0.0, 2.0 * band));
  report.notes.push_back("band = 3 sqrt(0.25/n); worst of " + std::to_string(trials) + " trials");
  return result;
}

std::vector<std::size_t> residual_checkpoints(std::size_t n) {
  require_horizon(n);
  std::vector<std::size_t> out;
  for (std::size_t c = 100; c < n; c *= 10) out.push_back(c);
  out.push_back(n);
  return out;
}

ResidualDecayReport residual_decay(const ProcessFamily& family, const StateFunction& f,
                                   std::string f_tag, std::size_t n, std::size_t runs,
                                   SeedSpec seed) {
  if (runs < 1) throw DomainError("runs must be >= 1");
  ResidualDecayReport report;
  report.family = describe(family);
  report.f_tag = std::move(f_tag);
  report.n = n;
  report.runs = runs;
  report.checkpoints = residual_checkpoints(n);
  report.band = 4.0 * std::sqrt(0.25 / static_cast<double>(n));
  report.abs_partial_means.resize(runs);
  parallel_for(runs, [&](std::size_t i) {
    const TrialSeeds s = trial_seeds(seed, i);
    const MeasureSequence ms = generate(family, n, s.params);
    const Trajectory t = sample_conditional(ms, s.sampling);
    const ResidualSeries r = residual_series(t, ms, f, report.checkpoints, report.f_tag);
    auto& row = report.abs_partial_means[i];
    for (const auto& p : r.partial_means.checkpoints) row.push_back(std::abs(p.partial_mean));
  });

  std::size_t monotone = 0;
  std::size_t endpoint = 0;
  for (const auto& row : report.abs_partial_means) {
    report.worst_terminal = std::max(report.worst_terminal, row.back());
    if (row.back() <= report.band) ++report.terminal_within_band;
    if (std::is_sorted(row.rbegin(), row.rend())) ++monotone;
    if (row.back() <= row.front()) ++endpoint;
  }
  const double rd = static_cast<double>(runs);
  report.monotone_fraction = static_cast<double>(monotone) / rd;
  report.endpoint_fraction = static_cast<double>(endpoint) / rd;
  report.terminal_pass = report.terminal_within_band == runs;
  report.monotone_pass = report.monotone_fraction >= kResidualMonotoneFraction;
  report.pass = report.terminal_pass && report.monotone_pass;
  return report;
}

}  // namespace disint
