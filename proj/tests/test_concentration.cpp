#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "disint/concentration.hpp"
#include "disint/errors.hpp"
#include "disint/sampling.hpp"

using namespace disint;

TEST(Bound, ExactFormula) {
  for (double t : {1.0, 55.0, 60.0, 700.0}) {
    for (std::size_t n : {10u, 100u, 1000u}) {
      EXPECT_EQ(hoeffding_bound(t, n), std::exp(-2.0 * t * t / static_cast<double>(n)));
    }
  }
}

TEST(Conditional, CountsMatchDirectSimulation) {
  const SeedSpec seed{42, 0};
  const auto r = conditional_hoeffding(IidUniformFamily{}, 50, 27.0, 3000, seed);
  std::size_t cond = 0, cond_exceed = 0, exceed = 0;
  for (std::size_t i = 0; i < 3000; ++i) {
    const TrialSeeds s = trial_seeds(seed, i);
    const auto ms = iid_uniform_params(50, s.params);
    const auto t = sample_conditional(ms, s.sampling);
    double e = 0.0, sum = 0.0;
    for (std::size_t k = 0; k < 50; ++k) e += ms.upper_weight(k);
    for (int x : t.labels) sum += x;
    exceed += sum >= 27.0;
    if (e < 27.0) {
      ++cond;
      cond_exceed += sum >= 27.0;
    }
  }
  EXPECT_EQ(r.conditioning_count, cond);
  EXPECT_EQ(r.conditional_exceedances, cond_exceed);
  EXPECT_EQ(r.unconditional_exceedances, exceed);
  EXPECT_EQ(r.bound, hoeffding_bound(27.0, 50));
  EXPECT_DOUBLE_EQ(r.conditioning_mass, cond / 3000.0);
  EXPECT_DOUBLE_EQ(r.decomposition_rhs, r.bound + (3000.0 - cond) / 3000.0);
  EXPECT_EQ(r.low_power, cond < kLowPowerCount);
}

TEST(Conditional, CanonicalDegeneracy) {
  for (double t : {55.0, 60.0, 70.0}) {
    const auto r = conditional_hoeffding(IidUniformFamily{}, 100, t, 20000, SeedSpec{42, 0},
                                         Disintegration::canonical);
    EXPECT_GT(r.conditioning_count, 0u);
    EXPECT_EQ(r.conditional_exceedances, 0u);
    EXPECT_EQ(r.empirical_conditional, 0.0);
    EXPECT_LE(r.empirical_conditional, r.bound);
  }
}

TEST(Conditional, DecompositionLineByLine) {
  const std::vector<double> ts{55, 60, 70};
  for (const ProcessFamily& f :
       {ProcessFamily{IidUniformFamily{}}, ProcessFamily{ExchangeableFamily{UniformMixing{}}},
        ProcessFamily{SubmartingaleFamily{}}}) {
    for (const auto& r : conditional_hoeffding_sweep(f, 100, ts, 20000, SeedSpec{7, 0})) {
      EXPECT_LE(r.empirical_unconditional, r.empirical_conditional * r.conditioning_mass +
                                               (1.0 - r.conditioning_mass) + r.unconditional_slack);
    }
  }
}

TEST(Conditional, CenteredBoundHolds) {
  const std::vector<double> ts{55, 60, 70};
  for (const auto& r : conditional_hoeffding_sweep(IidUniformFamily{}, 100, ts, 50000, SeedSpec{9, 0})) {
    EXPECT_LE(r.empirical_conditional, r.centered_conditional_bound + r.conditional_slack) << r.t;
  }
}

// The uncentered form fails as soon as E(S_n|xi) sits just below t.
TEST(Conditional, UncenteredFormIsExceededForIidParameters) {
  const auto r = conditional_hoeffding(IidUniformFamily{}, 100, 55.0, 50000, SeedSpec{9, 0});
  EXPECT_GT(r.empirical_conditional, r.bound + r.conditional_slack);
  EXPECT_FALSE(r.pass);
}

TEST(Conditional, SweepMatchesSingleCalls) {
  const std::vector<double> ts{52, 58};
  const auto sweep = conditional_hoeffding_sweep(IidUniformFamily{}, 100, ts, 2000, SeedSpec{1, 0});
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto one = conditional_hoeffding(IidUniformFamily{}, 100, ts[i], 2000, SeedSpec{1, 0});
    EXPECT_EQ(sweep[i].conditional_exceedances, one.conditional_exceedances);
    EXPECT_EQ(sweep[i].unconditional_exceedances, one.unconditional_exceedances);
    EXPECT_EQ(sweep[i].conditioning_count, one.conditioning_count);
  }
}

TEST(Conditional, EmptyConditioningEvent) {
  EXPECT_THROW((void)conditional_hoeffding(ExchangeableFamily{PointMassMixing{0.9}}, 100, 50.0, 500,
                                           SeedSpec{}),
               DegenerateConditioningError);
}

TEST(Conditional, LowPowerFlag) {
  const auto r = conditional_hoeffding(IidUniformFamily{}, 100, 45.0, 5000, SeedSpec{3, 0});
  EXPECT_LT(r.conditioning_count, kLowPowerCount);
  EXPECT_TRUE(r.low_power);
}

TEST(Conditional, DomainErrors) {
  const RegimeParams p{StochasticMatrix2({{{0.9, 0.1}, {0.2, 0.8}}}), 0.8, 0.3};
  EXPECT_THROW((void)conditional_hoeffding(RegimeSwitchFamily{p}, 100, 55.0, 10, SeedSpec{}),
               DomainError);
  EXPECT_THROW((void)conditional_hoeffding(IidUniformFamily{}, 100, 0.0, 10, SeedSpec{}),
               DomainError);
}

TEST(Classical, BoundaryIsPreconditionError) {
  EXPECT_THROW((void)independent_params_unconditional(100, 50.0, 10, SeedSpec{}), PreconditionError);
}

TEST(Classical, FarTail) {
  const auto r = independent_params_unconditional(100, 70.0, 1000000, SeedSpec{42, 0});
  EXPECT_NEAR(r.classical_bound, std::exp(-8.0), 1e-15);
  EXPECT_EQ(r.bound, hoeffding_bound(70.0, 100));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.bound_form, "exp(-2 (t - n/2)^2 / n)");
}

TEST(Classical, AllOnesAgainstExactProbability) {
  // P(X_i = 1) = E theta_i = 1/2 and the X_i are independent.
  const double exact = std::ldexp(1.0, -10);
  const auto r = independent_params_unconditional(10, 10.0, 1000000, SeedSpec{42, 0});
  EXPECT_NEAR(r.empirical_unconditional, exact, 3.0 * std::sqrt(exact * (1 - exact) / 1e6));
  EXPECT_TRUE(r.pass);
}
