#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "disint/errors.hpp"
#include "disint/processes.hpp"
#include "disint/sampling.hpp"

using namespace disint;

namespace {

MeasureSequence constant_bernoulli(std::size_t n, double p) {
  return MeasureSequence::two_point(Family::exchangeable, SeedSpec{}, 0, 1,
                                    std::vector<double>(n, p));
}

double frequency_of_one(const Trajectory& t) {
  double ones = 0.0;
  for (int x : t.labels) ones += x == 1 ? 1.0 : 0.0;
  return ones / static_cast<double>(t.size());
}

}  // namespace

TEST(SelectAtom, CumulativeRule) {
  const std::vector<double> w{0.2, 0.0, 0.5, 0.3};
  EXPECT_EQ(select_atom(w, 0.0), 0u);
  EXPECT_EQ(select_atom(w, 0.1999), 0u);
  EXPECT_EQ(select_atom(w, 0.2), 2u);
  EXPECT_EQ(select_atom(w, 0.69), 2u);
  EXPECT_EQ(select_atom(w, 0.7), 3u);
  EXPECT_EQ(select_atom(w, 0.9999999), 3u);
  // zero-mass trailing atom is never selected
  const std::vector<double> v{0.5, 0.5, 0.0};
  EXPECT_EQ(select_atom(v, 0.99999999999999989), 1u);
}

TEST(Sample, DiracForcesValues) {
  const auto ms = MeasureSequence::two_point(Family::canonical, SeedSpec{}, 0, 1,
                                             std::vector<double>{1, 0, 0, 1, 1});
  for (std::uint64_t s = 0; s < 10; ++s) {
    EXPECT_EQ(sample_conditional(ms, SeedSpec{s, 0}).labels, (std::vector<int>{1, 0, 0, 1, 1}));
  }
}

TEST(Sample, FairCoinFrequency) {
  const auto t = sample_conditional(constant_bernoulli(100000, 0.5), SeedSpec{42, 0});
  EXPECT_NEAR(frequency_of_one(t), 0.5, 3.0 * std::sqrt(0.25 / 1e5));
}

TEST(Sample, TrajectoryInvariants) {
  const auto ms = iid_uniform_params(500, SeedSpec{1, 1});
  const auto t = sample_conditional(ms, SeedSpec{1, 2});
  EXPECT_EQ(t.size(), ms.size());
  EXPECT_EQ(t.source_id, ms.id());
  EXPECT_EQ(t.seed, (SeedSpec{1, 2}));
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_GT(ms[i].weight_of(t.labels[i]), 0.0);
    EXPECT_EQ(t.values[i], static_cast<double>(t.labels[i]));
  }
}

TEST(Sample, Deterministic) {
  const auto ms = iid_uniform_params(1000, SeedSpec{2, 0});
  EXPECT_EQ(sample_conditional(ms, SeedSpec{3, 0}).labels,
            sample_conditional(ms, SeedSpec{3, 0}).labels);
}

TEST(Sample, AdjacentCoordinatesUncorrelated) {
  const auto ms = constant_bernoulli(2, 0.5);
  std::vector<double> a(10000), b(10000);
  for (std::size_t s = 0; s < a.size(); ++s) {
    const auto t = sample_conditional(ms, SeedSpec{19, s});
    a[s] = t.labels[0];
    b[s] = t.labels[1];
  }
  double ma = 0, mb = 0;
  for (std::size_t s = 0; s < a.size(); ++s) ma += a[s] / a.size(), mb += b[s] / b.size();
  double cov = 0, va = 0, vb = 0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    cov += (a[s] - ma) * (b[s] - mb);
    va += (a[s] - ma) * (a[s] - ma);
    vb += (b[s] - mb) * (b[s] - mb);
  }
  EXPECT_LE(std::abs(cov / std::sqrt(va * vb)), 0.03);
}

TEST(Sample, JointFrequencyIsProduct) {
  for (const double p : {0.2, 0.5, 0.8}) {
    const auto ms = constant_bernoulli(5, p);
    double both = 0.0;
    for (std::size_t s = 0; s < 10000; ++s) {
      const auto t = sample_conditional(ms, SeedSpec{20, s});
      both += (t.labels[1] == 1 && t.labels[3] == 1) ? 1.0 : 0.0;
    }
    EXPECT_NEAR(both / 10000.0, p * p, 0.03) << "p=" << p;
  }
}

TEST(Sample, MarginalLawPerStep) {
  const auto ms = volatility_measures(
      volatility_path(VolatilityParams{0.0, 0.5, 1.0, 64}, 6, SeedSpec{4, 0}), 3, 1.0);
  std::vector<std::vector<double>> counts(ms.size(), std::vector<double>(3, 0.0));
  for (std::size_t s = 0; s < 10000; ++s) {
    const auto t = sample_conditional(ms, SeedSpec{22, s});
    for (std::size_t i = 0; i < t.size(); ++i) counts[i][static_cast<std::size_t>(t.labels[i])] += 1.0;
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(counts[i][j] / 10000.0, ms.weight(i, j), 0.03);
  }
}

TEST(Canonical, DiracsAtValues) {
  Trajectory t;
  t.labels = {1, 0, 1};
  t.values = {1, 0, 1};
  t.state_space = {0, 1};
  const auto c = canonical_disintegration(t);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.weight(0, 1), 1.0);
  EXPECT_EQ(c.weight(1, 0), 1.0);
  EXPECT_EQ(c.weight(2, 1), 1.0);
  EXPECT_EQ(c.weight(1, 1), 0.0);
  EXPECT_EQ(c.family(), Family::canonical);
}

TEST(Canonical, RoundTripIsExact) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const ProcessFamily fam = s % 2 ? ProcessFamily{IidUniformFamily{}}
                                    : ProcessFamily{VolatilityFamily{VolatilityParams{0, 0.5, 1, 64}, 4, 1.0}};
    const auto t = sample_conditional(generate(fam, 300, SeedSpec{30, s}), SeedSpec{31, s});
    const auto back = sample_conditional(canonical_disintegration(t), SeedSpec{99, s});
    ASSERT_EQ(back.labels, t.labels);
    for (std::size_t i = 0; i < t.size(); ++i) {
      ASSERT_EQ(std::bit_cast<std::uint64_t>(back.values[i]), std::bit_cast<std::uint64_t>(t.values[i]));
    }
  }
}

TEST(Canonical, ParametersEqualObservations) {
  const auto t = sample_conditional(submartingale_params(1000, SeedSpec{3, 0}), SeedSpec{3, 1});
  const auto c = canonical_disintegration(t);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_EQ(c.upper_weight(i), t.labels[i]);
}

TEST(Residual, DiracResidualsVanish) {
  const auto t = sample_conditional(iid_uniform_params(1000, SeedSpec{5, 0}), SeedSpec{5, 1});
  const auto r = residual_series(t, canonical_disintegration(t), [](double x) { return 3 * x + 1; },
                                 default_checkpoints(1000));
  for (const auto& p : r.partial_means.checkpoints) EXPECT_EQ(p.partial_mean, 0.0);
}

TEST(Residual, ConstantFunctionVanishes) {
  const auto ms = iid_uniform_params(1000, SeedSpec{5, 0});
  const auto t = sample_conditional(ms, SeedSpec{5, 1});
  const auto r = residual_series(t, ms, [](double) { return 0.75; }, default_checkpoints(1000), "const");
  EXPECT_EQ(r.f_tag, "const");
  for (const auto& p : r.partial_means.checkpoints) EXPECT_EQ(p.partial_mean, 0.0);
}

TEST(Residual, IidIndicatorBand) {
  const auto ms = iid_uniform_params(100000, SeedSpec{42, 0});
  const auto t = sample_conditional(ms, SeedSpec{42, 0}.derive(kSamplingPurpose));
  const auto r = residual_series(t, ms, [](double x) { return x == 1.0 ? 1.0 : 0.0; },
                                 default_checkpoints(100000));
  EXPECT_LE(std::abs(r.partial_means.terminal_mean()), 3.0 * std::sqrt(0.25 / 1e5));
}

TEST(Residual, TermsBoundedAndMatchDefinition) {
  const auto ms = iid_uniform_params(200, SeedSpec{6, 0});
  const auto t = sample_conditional(ms, SeedSpec{6, 1});
  auto f = [](double x) { return x == 1.0 ? -2.0 : 0.5; };
  std::vector<std::size_t> every(200);
  for (std::size_t i = 0; i < every.size(); ++i) every[i] = i + 1;
  const auto r = residual_series(t, ms, f, every);
  double acc = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double z = f(t.values[i]) - measure_expectation(ms[i], f);
    ASSERT_LE(std::abs(z), 2 * 2.0);
    acc += z;
    ASSERT_EQ(r.partial_means.checkpoints[i].partial_mean, acc / static_cast<double>(i + 1));
  }
}

TEST(Residual, PairingErrors) {
  const auto ms = iid_uniform_params(10, SeedSpec{6, 0});
  auto t = sample_conditional(iid_uniform_params(11, SeedSpec{6, 0}), SeedSpec{6, 1});
  EXPECT_THROW((void)residual_series(t, ms, [](double x) { return x; }, std::vector<std::size_t>{10}),
               PairingError);
  t = sample_conditional(ms, SeedSpec{6, 1});
  t.labels[3] = 7;
  EXPECT_THROW((void)residual_series(t, ms, [](double x) { return x; }, std::vector<std::size_t>{10}),
               PairingError);
}
