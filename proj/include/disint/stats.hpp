#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace disint {

struct CesaroPoint {
  std::size_t n = 0;
  double partial_mean = 0.0;
};

// Running means (1/n) sum_{i<n} term_i recorded at increasing checkpoints.
struct CesaroSeries {
  std::vector<CesaroPoint> checkpoints;
  std::size_t terminal_n = 0;

  [[nodiscard]] double terminal_mean() const;
  // Partial mean at checkpoint n; throws DomainError if n was not recorded.
  [[nodiscard]] double at(std::size_t n) const;
};

// Powers of ten below `horizon`, followed by `horizon` itself.
[[nodiscard]] std::vector<std::size_t> default_checkpoints(std::size_t horizon);

// Sequential accumulator that snapshots the running mean at each checkpoint.
// Checkpoints must be strictly increasing and positive.
class CesaroAccumulator {
 public:
  explicit CesaroAccumulator(std::vector<std::size_t> checkpoints);

  void add(double term);
  [[nodiscard]] std::size_t count() const { return count_; }
  [[nodiscard]] double sum() const { return sum_; }
  // Closes the series at the current count.
  [[nodiscard]] CesaroSeries finish() const;

 private:
  std::vector<std::size_t> checkpoints_;
  std::size_t next_ = 0;
  std::size_t count_ = 0;
  double sum_ = 0.0;
  CesaroSeries series_;
};

[[nodiscard]] CesaroSeries cesaro_series(std::span<const double> terms,
                                         std::span<const std::size_t> checkpoints);

using CdfFunction = std::function<double(double)>;

[[nodiscard]] double uniform01_cdf(double x);

// Kolmogorov-Smirnov distance sup_x |F_n(x) - F(x)| between the empirical CDF
// of `samples` and a reference CDF. The supremum is taken over each distinct
// sample value and its left limit; `cdf_left` gives F(x-) and defaults to
// `cdf` (continuous reference). Throws DomainError on an empty sample.
[[nodiscard]] double empirical_cdf_distance(std::span<const double> samples, const CdfFunction& cdf,
                                            const CdfFunction& cdf_left = {});

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population (denominator n)
  double min = 0.0;
  double max = 0.0;
};

[[nodiscard]] SummaryStats summarize(std::span<const double> xs);

// Pearson correlation of two equally sized samples.
[[nodiscard]] double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace disint
