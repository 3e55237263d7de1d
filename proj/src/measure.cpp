#include "disint/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disint/errors.hpp"

namespace disint {

double MeasureView::weight_of(int label) const {
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] == label) return weights[j];
  }
  return 0.0;
}

void validate_measure(std::span<const int> labels, std::span<const double> weights) {
  if (labels.empty()) throw DomainError("measure has empty support");
  if (labels.size() != weights.size()) {
    throw DomainError("measure has " + std::to_string(labels.size()) + " labels but " +
                      std::to_string(weights.size()) + " weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) {
      throw DomainError("measure weight " + std::to_string(w) + " outside [0,1]");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw DomainError("measure weights sum to " + std::to_string(total));
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw DomainError("duplicate support label " + std::to_string(labels[i]));
      }
    }
  }
}

FiniteMeasure::FiniteMeasure(std::vector<int> labels, std::vector<double> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)) {
  validate_measure(labels_, weights_);
  positions_.assign(labels_.begin(), labels_.end());
}

FiniteMeasure::FiniteMeasure(std::vector<int> labels, std::vector<double> positions,
                             std::vector<double> weights)
    : labels_(std::move(labels)), positions_(std::move(positions)), weights_(std::move(weights)) {
  validate_measure(labels_, weights_);
  if (positions_.size() != labels_.size()) {
    throw DomainError("measure positions do not match its support");
  }
}

FiniteMeasure bernoulli_measure(double theta) { return two_point_measure(0, 1, theta); }

FiniteMeasure two_point_measure(int low, int high, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw DomainError("Bernoulli parameter " + std::to_string(theta) + " outside [0,1]");
  }
  return FiniteMeasure({low, high}, {1.0 - theta, theta});
}

double measure_expectation(const MeasureView& m, const StateFunction& f) {
  double total = 0.0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    total += f(m.positions[j]) * m.weights[j];
  }
  return total;
}

StochasticMatrix2::StochasticMatrix2(const Rows& q) : q_(q) {
  for (const auto& row : q_) {
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError("transition probability " + std::to_string(v) + " outside [0,1]");
      }
    }
    if (std::abs(row[0] + row[1] - 1.0) > kNormalizationTolerance) {
      throw DomainError("transition matrix row does not sum to 1");
    }
  }
}

StationaryDistribution stationary_distribution(const StochasticMatrix2& q) {
  const double leave0 = q(0, 1);
  const double leave1 = q(1, 0);
  if (leave0 <= 0.0 || leave1 <= 0.0) {
    throw NonErgodicError("transition matrix is reducible: an off-diagonal entry is 0");
  }
  const double pi0 = leave1 / (leave0 + leave1);
  return {pi0, leave0 / (leave0 + leave1)};
}

}  // namespace disint
