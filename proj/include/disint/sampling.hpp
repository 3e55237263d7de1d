#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "disint/measure.hpp"
#include "disint/processes.hpp"
#include "disint/random.hpp"
#include "disint/stats.hpp"

namespace disint {

// One realized observation sequence X_0, ..., X_{n-1}.
struct Trajectory {
  std::vector<int> labels;        // realized states
  std::vector<double> values;     // realized positions of those states
  std::vector<int> state_space;   // support shared by the source measures
  std::uint64_t source_id = 0;    // MeasureSequence::id() of the source
  SeedSpec seed;

  [[nodiscard]] std::size_t size() const { return labels.size(); }
};

struct ResidualSeries {
  CesaroSeries partial_means;  // of Z_i = f(X_i) - xi_i(f)
  std::string f_tag;
};

// Index of the atom selected by uniform draw u under `weights`: the first j
// with u < w_0 + ... + w_j, falling back to the last atom with positive mass.
[[nodiscard]] std::size_t select_atom(std::span<const double> weights, double u);

// Draws values[i] ~ ms[i] independently across i, so the joint law of the
// output is the product of the measures.
template <UniformSource G>
Trajectory sample_conditional(const MeasureSequence& ms, G& gen, SeedSpec seed) {
  Trajectory t;
  const std::size_t n = ms.size();
  t.labels.resize(n);
  t.values.resize(n);
  t.state_space.assign(ms.labels().begin(), ms.labels().end());
  t.source_id = ms.id();
  t.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    const MeasureView m = ms[i];
    const std::size_t j = select_atom(m.weights, gen.uniform());
    t.labels[i] = m.labels[j];
    t.values[i] = m.positions[j];
  }
  return t;
}

[[nodiscard]] Trajectory sample_conditional(const MeasureSequence& ms, SeedSpec seed);

// Dirac measures at the realized states. Atoms without mass keep their label
// as position, except that the hit atom carries the realized value.
[[nodiscard]] MeasureSequence canonical_disintegration(const Trajectory& t);

// Partial means of f(values[i]) - E_{ms[i]} f at each checkpoint. Throws
// PairingError when t and ms differ in length or t leaves the support.
[[nodiscard]] ResidualSeries residual_series(const Trajectory& t, const MeasureSequence& ms,
                                             const StateFunction& f,
                                             std::span<const std::size_t> checkpoints,
                                             std::string f_tag = "f");

// Indicator of the larger label of a two-point trajectory, i.e. X_i itself for
// {0,1} data and 1{X_i = 1} for {-1,1} data.
[[nodiscard]] std::vector<double> upper_indicator(const Trajectory& t);

}  // namespace disint
