#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "emcel/chain.hpp"
#include "emcel/errors.hpp"
#include "emcel/models.hpp"
#include "emcel/monte_carlo.hpp"

using namespace emcel;

TEST(EmpiricalCdf, RightContinuousSteps) {
  const std::vector<double> samples{1.0, 2.0, 3.0};
  const std::vector<double> xs{0.5, 1.0, 2.0, 2.5, 3.0};
  const auto f = empirical_cdf(samples, xs);
  EXPECT_DOUBLE_EQ(f[0].second, 0.0);
  EXPECT_DOUBLE_EQ(f[1].second, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(f[2].second, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(f[3].second, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(f[4].second, 1.0);
  EXPECT_THROW(empirical_cdf({}, xs), DomainError);
}

TEST(Payoff, Kinds) {
  EXPECT_DOUBLE_EQ(Payoff::mean()(-0.3), 0.3);
  EXPECT_DOUBLE_EQ(Payoff::indicator(0.1)(0.1), 1.0);
  EXPECT_DOUBLE_EQ(Payoff::indicator(0.1)(0.2), 0.0);
  EXPECT_DOUBLE_EQ(Payoff::raw()(-0.3), -0.3);
}

TEST(Summarize, MeanAndStandardError) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  const McSummary s = summarize(x, Payoff::raw(), 0.1);
  EXPECT_DOUBLE_EQ(s.estimate, 2.5);
  EXPECT_NEAR(s.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(s.n_paths, 4u);
}

TEST(GridSteps, RoundsDownTolerantly) {
  EXPECT_EQ(grid_steps(1.0, 1e-3), 1000u);
  EXPECT_EQ(grid_steps(1.0, 0.3), 3u);
  EXPECT_EQ(grid_steps(0.3, 0.1), 3u);
}

TEST(SampleTerminal, IndependentOfThreadCount) {
  const SpeedMeasure m = speed_measure(model::StickyBM{1.0, 0.5});
  const ScaleFactor sf = build_scale_factor(m, 1e-2, strategy::Emcel{});
  const auto one = sample_terminal(sf, m.space(), std::nullopt, 0.0, 100, 3000, 42, 1);
  const auto four = sample_terminal(sf, m.space(), std::nullopt, 0.0, 100, 3000, 42, 4);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one[17], simulate_terminal(sf, m.space(), 0.0, 100, path_seed(42, 17)));
}

TEST(SampleTerminal, FoldedValuesForReflectingModel) {
  const auto x = sample_model(model::ReflectedStickyBM{1.0, 0.5}, std::nullopt, 0.01, 1.0, 2000, 3);
  for (double v : x) EXPECT_GE(v, 0.0);
}

TEST(EstimateFunctional, SymmetricWalkHasZeroMean) {
  const McSummary s = estimate_functional(model::BrownianMotion{1.0}, std::nullopt, 0.01, 1.0, Payoff::raw(), 20000, 8);
  EXPECT_NEAR(s.estimate, 0.0, 4.0 * s.std_error);
  ASSERT_TRUE(s.target.has_value());
  EXPECT_EQ(*s.target, 0.0);
  EXPECT_FALSE(s.time_rounded);
}

TEST(EstimateFunctional, ReportsTimeRounding) {
  const McSummary s = estimate_functional(model::BrownianMotion{1.0}, std::nullopt, 0.3, 1.0, Payoff::raw(), 100, 8);
  EXPECT_TRUE(s.time_rounded);
  EXPECT_NEAR(s.t_grid, 0.9, 1e-15);
}

TEST(EstimateFunctional, StandardErrorScalesWithPaths) {
  for (int rep = 0; rep < 3; ++rep) {
    const auto spec = model::ReflectedStickyBM{1.0, 0.5};
    const McSummary a = estimate_functional(spec, std::nullopt, 1.0 / 64, 1.0, Payoff::mean(), 4000, 100 + rep);
    const McSummary b = estimate_functional(spec, std::nullopt, 1.0 / 64, 1.0, Payoff::mean(), 16000, 200 + rep);
    const double ratio = a.std_error / b.std_error;
    EXPECT_GT(ratio, 2.0 / 1.5);
    EXPECT_LT(ratio, 2.0 * 1.5);
  }
}

TEST(EstimateFunctional, DonskerVarianceForSmallSteps) {
  const auto x = sample_model(model::BrownianMotion{1.0}, std::nullopt, 1e-2, 1.0, 40000, 11);
  double s2 = 0.0;
  for (double v : x) s2 += v * v;
  // X_1 is a sum of 100 steps of size 0.1, so E X_1^2 = 1 exactly
  EXPECT_NEAR(s2 / x.size(), 1.0, 4.0 * std::sqrt(2.0 / x.size()));
}

TEST(WorkerCount, ReadsEnvironment) {
  setenv("EMCEL_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3u);
  setenv("EMCEL_THREADS", "zero", 1);
  EXPECT_GE(worker_count(), 1u);
  unsetenv("EMCEL_THREADS");
}
