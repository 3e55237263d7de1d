#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "disint/errors.hpp"
#include "disint/lln.hpp"

using namespace disint;

namespace {

const RegimeParams kFixture{StochasticMatrix2({{{0.9, 0.1}, {0.2, 0.8}}}), 0.8, 0.3};

}  // namespace

TEST(KnownLimit, Families) {
  EXPECT_EQ(known_cesaro_limit(IidUniformFamily{}), 0.5);
  EXPECT_EQ(known_cesaro_limit(ExchangeableFamily{PointMassMixing{0.3}}), 0.3);
  EXPECT_FALSE(known_cesaro_limit(ExchangeableFamily{UniformMixing{}}));
  EXPECT_FALSE(known_cesaro_limit(SubmartingaleFamily{}));
  EXPECT_NEAR(*known_cesaro_limit(RegimeSwitchFamily{kFixture}), 19.0 / 30.0, 1e-15);
}

TEST(Forward, PointMassHalf) {
  const auto r = check_forward(ExchangeableFamily{PointMassMixing{0.5}}, 100000, 1, SeedSpec{42, 0});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.theta_cesaro_terminal, 0.5);
  EXPECT_LE(std::abs(r.x_cesaro_terminal - 0.5), 3.0 * std::sqrt(0.25 / 1e5));
}

TEST(Forward, IidUniform) {
  const auto r = check_forward(IidUniformFamily{}, 100000, 1, SeedSpec{42, 0});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.band, 3.0 * std::sqrt(0.25 / 1e5));
  EXPECT_EQ(r.direction, Direction::forward);
}

TEST(Forward, RegimeSwitch) {
  const auto r = check_forward(RegimeSwitchFamily{kFixture}, 100000, 1, SeedSpec{42, 0});
  EXPECT_EQ(r.band, 0.02);
  EXPECT_NEAR(r.target_p, 19.0 / 30.0, 1e-15);
  EXPECT_TRUE(r.pass);
}

TEST(Forward, PassRuleMatchesReport) {
  const auto r = check_forward(IidUniformFamily{}, 1000, 50, SeedSpec{3, 0});
  ASSERT_EQ(r.deviations.size(), 50u);
  double worst = 0.0;
  for (double d : r.deviations) worst = std::max(worst, d);
  EXPECT_EQ(std::abs(r.x_cesaro_terminal - r.target_p), worst);
  EXPECT_EQ(r.pass, worst <= r.band);
}

TEST(Forward, NoConstantLimitIsConfigError) {
  EXPECT_THROW((void)check_forward(ExchangeableFamily{UniformMixing{}}, 100, 1, SeedSpec{}),
               ConfigError);
  EXPECT_THROW((void)check_forward(SubmartingaleFamily{}, 100, 1, SeedSpec{}), ConfigError);
}

TEST(Forward, DeviationShrinksWithHorizon) {
  EXPECT_LT(forward_band(IidUniformFamily{}, 100000), forward_band(IidUniformFamily{}, 1000));
  const auto small = check_forward(IidUniformFamily{}, 1000, 100, SeedSpec{55, 0});
  const auto large = check_forward(IidUniformFamily{}, 100000, 100, SeedSpec{55, 0});
  std::size_t inside = 0;
  for (double d : large.deviations) inside += d <= large.band;
  EXPECT_GE(inside, 97u);
  std::size_t shrank = 0;
  for (std::size_t i = 0; i < 100; ++i) shrank += large.deviations[i] < small.deviations[i];
  EXPECT_GE(shrank, 90u);
}

TEST(Converse, EveryTwoPointFamily) {
  const std::vector<ProcessFamily> families{
      IidUniformFamily{}, ExchangeableFamily{UniformMixing{}}, RegimeSwitchFamily{kFixture},
      SubmartingaleFamily{}, VolatilityFamily{VolatilityParams{0, 0.5, 1, 64}, 2, 1.0}};
  for (const auto& f : families) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto r = check_converse(f, 10000, SeedSpec{8, s});
      EXPECT_TRUE(r.pass) << describe(f);
      EXPECT_EQ(r.theta_cesaro_terminal, r.x_cesaro_terminal);
      EXPECT_EQ(r.direction, Direction::converse);
    }
  }
}

TEST(Converse, AllOnesTrajectory) {
  Trajectory t;
  t.labels.assign(1000, 1);
  t.values.assign(1000, 1.0);
  t.state_space = {0, 1};
  const auto r = check_converse(t, default_checkpoints(1000));
  EXPECT_TRUE(r.pass);
  for (const auto& p : r.theta_series.checkpoints) EXPECT_EQ(p.partial_mean, 1.0);
}

TEST(Converse, NonBernoulliIsDomainError) {
  EXPECT_THROW(
      (void)check_converse(VolatilityFamily{VolatilityParams{}, 3, 1.0}, 100, SeedSpec{}),
      DomainError);
}

TEST(LimitDistribution, UniformMixing) {
  const auto r = exchangeable_limit_distribution(UniformMixing{}, 2000, 2000, SeedSpec{42, 0});
  EXPECT_LE(r.ks_distance, 0.05);
  EXPECT_TRUE(r.pass);
  EXPECT_GE(r.across_trial_stddev, 0.25);
  EXPECT_GE(r.conditional_band_fraction, 0.99);
  for (double m : r.terminal_means) {
    ASSERT_GE(m, 0.0);
    ASSERT_LE(m, 1.0);
  }
}

TEST(LimitDistribution, PointMassClusters) {
  const auto r = exchangeable_limit_distribution(PointMassMixing{0.5}, 2000, 500, SeedSpec{42, 0});
  EXPECT_NEAR(r.ks_distance, 0.5, 0.05);
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.across_trial_stddev, 0.05);
}

TEST(LimitDistribution, TooFewTrials) {
  EXPECT_THROW((void)exchangeable_limit_distribution(UniformMixing{}, 10, 99, SeedSpec{}),
               DomainError);
}

TEST(RandomWalk, Fairness) {
  const auto r = random_walk_symmetry(100000, 1, SeedSpec{42, 0});
  EXPECT_TRUE(r.report.pass());
  EXPECT_LE(std::abs(r.report.metric("freq_plus_one").value - 0.5), 3.0 * std::sqrt(0.25 / 1e5));
  EXPECT_EQ(r.first_path.size(), 100000u);
}

TEST(RandomWalk, AntitheticIsComplementary) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto a = random_walk_symmetry(10000, 3, SeedSpec{s, 0});
    const auto b = random_walk_symmetry(10000, 3, SeedSpec{s, 0}, true);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a.up_counts[i] + b.up_counts[i], 10000u);
    for (std::size_t k = 0; k < a.first_path.size(); ++k) {
      ASSERT_EQ(a.first_path[k], -b.first_path[k]);
    }
  }
}

TEST(RandomWalk, SingleStep) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = random_walk_symmetry(1, 1, SeedSpec{s, 0});
    ASSERT_EQ(r.first_path.size(), 1u);
    EXPECT_TRUE(r.first_path[0] == 1 || r.first_path[0] == -1);
    EXPECT_EQ(std::abs(r.report.metric("s_n_over_n").value), 1.0);
  }
}

TEST(Residuals, TerminalBandEveryFamily) {
  const std::vector<ProcessFamily> families{
      IidUniformFamily{}, ExchangeableFamily{UniformMixing{}}, RegimeSwitchFamily{kFixture},
      SubmartingaleFamily{}, VolatilityFamily{VolatilityParams{0, 0.5, 1, 64}, 2, 1.0}};
  auto positive = [](double x) { return x > 0.0 ? 1.0 : 0.0; };
  for (const auto& f : families) {
    const auto r = residual_decay(f, positive, "positive", 100000, 20, SeedSpec{42, 0});
    EXPECT_EQ(r.checkpoints, (std::vector<std::size_t>{100, 1000, 10000, 100000}));
    EXPECT_TRUE(r.terminal_pass) << describe(f) << " worst " << r.worst_terminal;
    EXPECT_GE(r.endpoint_fraction, 0.9) << describe(f);
    EXPECT_EQ(r.pass, r.terminal_pass && r.monotone_pass);
  }
}
