#include "disint/sampling.hpp"

#include <algorithm>

#include "disint/errors.hpp"

namespace disint {

std::size_t select_atom(std::span<const double> weights, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] > 0.0) {
      cumulative += weights[j];
      last_positive = j;
      if (u < cumulative) return j;
    }
  }
  return last_positive;
}

Trajectory sample_conditional(const MeasureSequence& ms, SeedSpec seed) {
  Stream s(seed);
  return sample_conditional(ms, s, seed);
}

MeasureSequence canonical_disintegration(const Trajectory& t) {
  const std::size_t k = t.state_space.size();
  const std::size_t n = t.size();
  if (t.values.size() != n) throw PairingError("trajectory labels and values differ in length");

  bool label_valued = true;
  for (std::size_t i = 0; i < n && label_valued; ++i) {
    label_valued = t.values[i] == static_cast<double>(t.labels[i]);
  }

  std::vector<double> weights(n * k, 0.0);
  std::vector<double> positions;
  if (label_valued) {
    positions.assign(t.state_space.begin(), t.state_space.end());
  } else {
    positions.resize(n * k);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = std::find(t.state_space.begin(), t.state_space.end(), t.labels[i]);
    if (it == t.state_space.end()) throw PairingError("trajectory state outside its state space");
    const auto hit = static_cast<std::size_t>(it - t.state_space.begin());
    weights[i * k + hit] = 1.0;
    if (!label_valued) {
      for (std::size_t j = 0; j < k; ++j) {
        positions[i * k + j] = j == hit ? t.values[i] : static_cast<double>(t.state_space[j]);
      }
    }
  }
  return {Family::canonical, t.seed, t.state_space, std::move(weights), std::move(positions)};
}

ResidualSeries residual_series(const Trajectory& t, const MeasureSequence& ms,
                               const StateFunction& f, std::span<const std::size_t> checkpoints,
                               std::string f_tag) {
  if (t.size() != ms.size()) {
    throw PairingError("trajectory has " + std::to_string(t.size()) + " steps but measure sequence " +
                       std::to_string(ms.size()));
  }
  CesaroAccumulator acc({checkpoints.begin(), checkpoints.end()});
  for (std::size_t i = 0; i < t.size(); ++i) {
    const MeasureView m = ms[i];
    const auto it = std::find(m.labels.begin(), m.labels.end(), t.labels[i]);
    if (it == m.labels.end()) throw PairingError("trajectory state outside the measure support");
    acc.add(f(t.values[i]) - measure_expectation(m, f));
  }
  return {acc.finish(), std::move(f_tag)};
}

std::vector<double> upper_indicator(const Trajectory& t) {
  if (t.state_space.size() != 2) throw DomainError("trajectory is not two-point");
  const int upper = std::max(t.state_space[0], t.state_space[1]);
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t.labels[i] == upper ? 1.0 : 0.0;
  return out;
}

}  // namespace disint
