#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "emcel/errors.hpp"
#include "emcel/models.hpp"
#include "emcel/scale_factor.hpp"
#include "emcel/scale_solver.hpp"

using namespace emcel;

TEST(ScaleFactor, ZeroAtFiniteBoundaries) {
  const SpeedMeasure m = SpeedMeasure::from_components(
      StateSpace(0.0, 1.0, BoundaryBehavior::Absorbing, BoundaryBehavior::Absorbing),
      PiecewiseConstantDensity::constant(2.0));
  const ScaleFactor sf = build_scale_factor(m, 1e-2, strategy::Emcel{});
  EXPECT_EQ(sf(0.0), 0.0);
  EXPECT_EQ(sf(1.0), 0.0);
  EXPECT_NEAR(sf(0.5), 0.1, 1e-9);
  // truncated so that y - a stays in [0, 1]
  EXPECT_NEAR(sf(0.05), 0.05, 1e-15);
  EXPECT_TRUE(sf.evaluate(0.05).boundary_short);
  EXPECT_THROW(sf(1.5), DomainError);
}

TEST(ScaleFactor, MemoizesBisectionResults) {
  const ScaleFactor sf = build_scale_factor(speed_measure(model::StickyBM{1.0, 1.0}), 1e-3, strategy::Emcel{});
  EXPECT_EQ(sf.memo_size(), 0u);
  const double first = sf(0.01);
  EXPECT_EQ(sf.memo_size(), 1u);
  EXPECT_EQ(sf(0.01), first);
  EXPECT_EQ(sf.memo_size(), 1u);
  EXPECT_EQ(sf.kind(), ScaleFactorKind::Bisection);
}

TEST(ScaleFactor, ConcurrentEvaluationIsConsistent) {
  const ScaleFactor sf = build_scale_factor(speed_measure(model::StickyBM{1.0, 0.5}), 1e-3, strategy::Emcel{});
  std::vector<double> a(4 * 200);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (int i = 0; i < 200; ++i) a[t * 200 + i] = sf(-0.1 + 0.001 * i);
    });
  }
  for (auto& th : pool) th.join();
  for (int t = 1; t < 4; ++t)
    for (int i = 0; i < 200; ++i) EXPECT_EQ(a[t * 200 + i], a[i]);
}

TEST(ScaleFactor, StrategiesRejectMismatchedMeasures) {
  const SpeedMeasure bm = speed_measure(model::BrownianMotion{1.0});
  EXPECT_THROW(build_scale_factor(bm, 1e-3, strategy::StickyClosedForm{1.0, 1.0}), MismatchError);
  EXPECT_THROW(build_scale_factor(bm, 1e-3, strategy::GbmClosedForm{1.0}), MismatchError);
  EXPECT_THROW(build_scale_factor(bm, 1e-3, strategy::Cantor{4}), MismatchError);
  EXPECT_THROW(build_scale_factor(bm, 1e-3, strategy::BmClosedForm{2.0}), MismatchError);
  const SpeedMeasure sticky = speed_measure(model::StickyBM{1.0, 1.0});
  EXPECT_THROW(build_scale_factor(sticky, 1e-3, strategy::WeakEuler{}), MismatchError);
  EXPECT_THROW(build_scale_factor(sticky, 1e-3, strategy::StickyClosedForm{1.0, 2.0}), MismatchError);
  EXPECT_NO_THROW(build_scale_factor(sticky, 1e-3, strategy::StickyClosedForm{1.0, 1.0}));
}

TEST(ScaleFactor, WeakEulerUsesDensity) {
  const SpeedMeasure gbm = speed_measure(model::GeometricBM{0.5});
  const ScaleFactor sf = build_scale_factor(gbm, 1e-2, strategy::WeakEuler{});
  EXPECT_NEAR(sf(2.0), 0.1 * 0.5 * 2.0, 1e-14);
  const ScaleFactor custom = build_scale_factor(gbm, 1e-2, strategy::WeakEuler{[](double y) { return 0.5 * y; }});
  EXPECT_NEAR(custom(2.0), sf(2.0), 1e-15);
}

TEST(ScaleFactor, StrategyNames) {
  EXPECT_EQ(strategy_name(strategy::Emcel{}), "emcel");
  EXPECT_EQ(strategy_name(strategy::Cantor{4}), "cantor(n=4)");
  EXPECT_EQ(strategy_name(strategy::GbmClosedForm{0.5}), "gbm(sigma=0.5)");
}
