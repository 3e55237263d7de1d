#include "disint/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disint/errors.hpp"

namespace disint {

double CesaroSeries::terminal_mean() const {
  if (checkpoints.empty()) throw DomainError("empty Cesaro series");
  return checkpoints.back().partial_mean;
}

double CesaroSeries::at(std::size_t n) const {
  for (const auto& p : checkpoints) {
    if (p.n == n) return p.partial_mean;
  }
  throw DomainError("no checkpoint at n=" + std::to_string(n));
}

std::vector<std::size_t> default_checkpoints(std::size_t horizon) {
  std::vector<std::size_t> out;
  for (std::size_t p = 10; p < horizon; p *= 10) out.push_back(p);
  if (horizon > 0) out.push_back(horizon);
  return out;
}

CesaroAccumulator::CesaroAccumulator(std::vector<std::size_t> checkpoints)
    : checkpoints_(std::move(checkpoints)) {
  for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
    if (checkpoints_[i] == 0 || (i > 0 && checkpoints_[i] <= checkpoints_[i - 1])) {
      throw DomainError("checkpoints must be positive and strictly increasing");
    }
  }
  series_.checkpoints.reserve(checkpoints_.size());
}

void CesaroAccumulator::add(double term) {
  sum_ += term;
  ++count_;
  if (next_ < checkpoints_.size() && checkpoints_[next_] == count_) {
    series_.checkpoints.push_back({count_, sum_ / static_cast<double>(count_)});
    ++next_;
  }
}

CesaroSeries CesaroAccumulator::finish() const {
  CesaroSeries out = series_;
  out.terminal_n = count_;
  return out;
}

CesaroSeries cesaro_series(std::span<const double> terms,
                           std::span<const std::size_t> checkpoints) {
  CesaroAccumulator acc({checkpoints.begin(), checkpoints.end()});
  for (double t : terms) acc.add(t);
  return acc.finish();
}

double uniform01_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

double empirical_cdf_distance(std::span<const double> samples, const CdfFunction& cdf,
                              const CdfFunction& cdf_left) {
  if (samples.empty()) throw DomainError("empirical CDF of an empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const CdfFunction& left = cdf_left ? cdf_left : cdf;
  const double n = static_cast<double>(sorted.size());

  double d = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double v = sorted[i];
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == v) ++j;
    const double below = static_cast<double>(i) / n;  // F_n(v-)
    const double upto = static_cast<double>(j) / n;   // F_n(v)
    d = std::max({d, std::abs(upto - cdf(v)), std::abs(below - left(v))});
    i = j;
  }
  return d;
}

SummaryStats summarize(std::span<const double> xs) {
  SummaryStats s;
  if (xs.empty()) return s;
  s.min = xs.front();
  s.max = xs.front();
  double m2 = 0.0;
  for (double x : xs) {
    ++s.count;
    const double d1 = x - s.mean;
    s.mean += d1 / static_cast<double>(s.count);
    m2 += d1 * (x - s.mean);
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.stddev = std::sqrt(m2 / static_cast<double>(s.count));
  return s;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw DomainError("correlation needs two samples of equal size >= 2");
  }
  const SummaryStats sa = summarize(a);
  const SummaryStats sb = summarize(b);
  double cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) cov += (a[i] - sa.mean) * (b[i] - sb.mean);
  cov /= static_cast<double>(a.size());
  if (sa.stddev == 0.0 || sb.stddev == 0.0) return 0.0;
  return cov / (sa.stddev * sb.stddev);
}

}  // namespace disint
