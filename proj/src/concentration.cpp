#include "disint/concentration.hpp"

#include <cmath>

#include "disint/errors.hpp"
#include "disint/parallel.hpp"
#include "disint/sampling.hpp"

namespace disint {

namespace {

struct TrialSums {
  double conditional_mean = 0.0;  // E(S_n | xi)
  double sum = 0.0;               // S_n
};

double binomial_slack(double p, std::size_t count) {
  if (count == 0) return 0.0;
  return kBoundSlackSigmas * std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

void require_unit_interval(const MeasureSequence& ms) {
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < ms.support_size(); ++j) {
      const double x = ms.position(i, j);
      if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("concentration check needs observations in [0,1]");
      }
    }
  }
}

std::vector<TrialSums> simulate_sums(const ProcessFamily& family, std::size_t n,
                                     std::size_t trials, SeedSpec seed,
                                     Disintegration disintegration) {
  require_horizon(n);
  if (trials < 1) throw DomainError("trials must be >= 1");
  // Fails early, before any trial runs, for families outside [0,1].
  require_unit_interval(generate(family, 1, seed));

  std::vector<TrialSums> sums(trials);
  parallel_for(trials, [&](std::size_t i) {
    const TrialSeeds s = trial_seeds(seed, i);
    const MeasureSequence ms = generate(family, n, s.params);
    require_unit_interval(ms);
    const Trajectory t = sample_conditional(ms, s.sampling);
    TrialSums out;
    for (double x : t.values) out.sum += x;
    if (disintegration == Disintegration::canonical) {
      const MeasureSequence xi = canonical_disintegration(t);
      for (std::size_t k = 0; k < xi.size(); ++k) {
        for (std::size_t j = 0; j < xi.support_size(); ++j) {
          out.conditional_mean += xi.position(k, j) * xi.weight(k, j);
        }
      }
    } else {
      for (std::size_t k = 0; k < ms.size(); ++k) {
        for (std::size_t j = 0; j < ms.support_size(); ++j) {
          out.conditional_mean += ms.position(k, j) * ms.weight(k, j);
        }
      }
    }
    sums[i] = out;
  });
  return sums;
}

ConcentrationReport evaluate(const std::vector<TrialSums>& sums, std::size_t n, double t) {
  ConcentrationReport r;
  r.t = t;
  r.n = n;
  r.trials = sums.size();
  r.bound = hoeffding_bound(t, n);
  double centered = 0.0;
  std::size_t high = 0;
  for (const auto& s : sums) {
    const bool exceed = s.sum >= t;
    if (exceed) ++r.unconditional_exceedances;
    if (s.conditional_mean < t) {
      ++r.conditioning_count;
      if (exceed) ++r.conditional_exceedances;
      const double gap = t - s.conditional_mean;
      centered += std::exp(-2.0 * gap * gap / static_cast<double>(n));
    } else {
      ++high;
    }
  }
  if (r.conditioning_count == 0) {
    throw DegenerateConditioningError("conditioning event E(S_n|xi) < t never occurred (t=" +
                                      std::to_string(t) + ")");
  }
  const double trials = static_cast<double>(r.trials);
  const double cond = static_cast<double>(r.conditioning_count);
  r.centered_conditional_bound = centered / cond;
  r.empirical_conditional = static_cast<double>(r.conditional_exceedances) / cond;
  r.conditioning_mass = cond / trials;
  r.decomposition_rhs = r.bound + static_cast<double>(high) / trials;
  r.empirical_unconditional = static_cast<double>(r.unconditional_exceedances) / trials;
  r.conditional_slack = binomial_slack(r.empirical_conditional, r.conditioning_count);
  r.unconditional_slack = binomial_slack(r.empirical_unconditional, r.trials);
  r.low_power = r.conditioning_count < kLowPowerCount;
  r.pass = r.empirical_conditional <= r.bound + r.conditional_slack &&
           r.empirical_unconditional <= r.decomposition_rhs + r.unconditional_slack;
  return r;
}

}  // namespace

double hoeffding_bound(double t, std::size_t n) {
  return std::exp(-2.0 * t * t / static_cast<double>(n));
}

std::vector<ConcentrationReport> conditional_hoeffding_sweep(const ProcessFamily& family,
                                                             std::size_t n,
                                                             std::span<const double> thresholds,
                                                             std::size_t trials, SeedSpec seed,
                                                             Disintegration disintegration) {
  for (double t : thresholds) {
    if (!(t > 0.0)) throw DomainError("threshold t must be > 0");
  }
  const auto sums = simulate_sums(family, n, trials, seed, disintegration);
  std::vector<ConcentrationReport> reports;
  reports.reserve(thresholds.size());
  for (double t : thresholds) {
    ConcentrationReport r = evaluate(sums, n, t);
    r.family = describe(family);
    r.disintegration = disintegration;
    reports.push_back(std::move(r));
  }
  return reports;
}

ConcentrationReport conditional_hoeffding(const ProcessFamily& family, std::size_t n, double t,
                                          std::size_t trials, SeedSpec seed,
                                          Disintegration disintegration) {
  const double thresholds[] = {t};
  return conditional_hoeffding_sweep(family, n, thresholds, trials, seed, disintegration).front();
}

ConcentrationReport independent_params_unconditional(std::size_t n, double t, std::size_t trials,
                                                     SeedSpec seed) {
  require_horizon(n);
  const double mean = static_cast<double>(n) / 2.0;
  if (!(t > mean)) {
    throw PreconditionError("classical bound needs t > E S_n = " + std::to_string(mean));
  }
  const auto sums = simulate_sums(IidUniformFamily{}, n, trials, seed, Disintegration::generated);

  ConcentrationReport r;
  r.family = describe(IidUniformFamily{});
  r.t = t;
  r.n = n;
  r.trials = trials;
  r.bound = hoeffding_bound(t, n);
  const double gap = t - mean;
  r.bound_form = "exp(-2 (t - n/2)^2 / n)";
  r.classical_bound = std::exp(-2.0 * gap * gap / static_cast<double>(n));
  std::size_t high = 0;
  for (const auto& s : sums) {
    if (s.sum >= t) ++r.unconditional_exceedances;
    if (s.conditional_mean < t) {
      ++r.conditioning_count;
      if (s.sum >= t) ++r.conditional_exceedances;
    } else {
      ++high;
    }
  }
  const double td = static_cast<double>(trials);
  r.conditioning_mass = static_cast<double>(r.conditioning_count) / td;
  if (r.conditioning_count > 0) {
    r.empirical_conditional = static_cast<double>(r.conditional_exceedances) /
                              static_cast<double>(r.conditioning_count);
  }
  r.decomposition_rhs = r.bound + static_cast<double>(high) / td;
  r.empirical_unconditional = static_cast<double>(r.unconditional_exceedances) / td;
  r.unconditional_slack = binomial_slack(r.empirical_unconditional, trials);
  r.pass = r.empirical_unconditional <= r.classical_bound + r.unconditional_slack;
  return r;
}

}  // namespace disint
