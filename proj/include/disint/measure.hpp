#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace disint {

// Tolerance for measure normalization and stationary-distribution residuals.
inline constexpr double kNormalizationTolerance = 1e-12;

// Scalar function on a state space, evaluated at an atom's position.
using StateFunction = std::function<double(double)>;

// Non-owning view of a probability measure on a finite state space.
//
// Each atom has an integer label (the state), a real position (the value the
// state realizes, equal to the label for label-valued spaces such as {0,1} or
// {-1,1}) and a weight.
struct MeasureView {
  std::span<const int> labels;
  std::span<const double> positions;
  std::span<const double> weights;

  [[nodiscard]] std::size_t size() const { return labels.size(); }
  // Weight of `label`, 0 when the label is not in the support.
  [[nodiscard]] double weight_of(int label) const;
};

// Owning probability measure on a finite state space. Immutable once built.
class FiniteMeasure {
 public:
  // Positions default to the labels. Throws DomainError unless the labels are
  // distinct, every weight is in [0,1] and the weights sum to 1 (1e-12).
  FiniteMeasure(std::vector<int> labels, std::vector<double> weights);
  FiniteMeasure(std::vector<int> labels, std::vector<double> positions,
                std::vector<double> weights);

  [[nodiscard]] MeasureView view() const { return {labels_, positions_, weights_}; }
  operator MeasureView() const { return view(); }  // NOLINT(google-explicit-constructor)

  [[nodiscard]] std::span<const int> labels() const { return labels_; }
  [[nodiscard]] std::span<const double> positions() const { return positions_; }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }
  [[nodiscard]] double weight_of(int label) const { return view().weight_of(label); }

 private:
  std::vector<int> labels_;
  std::vector<double> positions_;
  std::vector<double> weights_;
};

// Throws DomainError if (labels, weights) is not a probability measure.
void validate_measure(std::span<const int> labels, std::span<const double> weights);

// Bernoulli(theta) on {0,1}: weight theta on 1.
[[nodiscard]] FiniteMeasure bernoulli_measure(double theta);

// Two-point measure on {low, high} with weight theta on `high`.
[[nodiscard]] FiniteMeasure two_point_measure(int low, int high, double theta);

// sum_s f(s) * weight(s)
[[nodiscard]] double measure_expectation(const MeasureView& m, const StateFunction& f);

// Row-stochastic 2x2 matrix; rows and columns indexed by regime 0 and 1.
class StochasticMatrix2 {
 public:
  using Rows = std::array<std::array<double, 2>, 2>;

  // Throws DomainError unless every entry lies in [0,1] and rows sum to 1.
  explicit StochasticMatrix2(const Rows& q);

  [[nodiscard]] double operator()(int from, int to) const { return q_[from][to]; }
  [[nodiscard]] const Rows& rows() const { return q_; }

 private:
  Rows q_;
};

struct StationaryDistribution {
  double pi0 = 0.0;
  double pi1 = 0.0;
};

// Closed form pi0 = q10 / (q01 + q10). Throws NonErgodicError when an
// off-diagonal entry is 0.
[[nodiscard]] StationaryDistribution stationary_distribution(const StochasticMatrix2& q);

}  // namespace disint
