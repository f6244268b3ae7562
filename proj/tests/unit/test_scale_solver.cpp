#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>

#include "emcel/cantor.hpp"
#include "emcel/errors.hpp"
#include "emcel/functionals.hpp"
#include "emcel/models.hpp"
#include "emcel/scale_solver.hpp"
#include "oracles.hpp"

using namespace emcel;

TEST(SolveEmcel, BrownianMotionGivesSigmaRootH) {
  const SpeedMeasure m = speed_measure(model::BrownianMotion{2.0});
  for (double h : {1e-1, 1e-3, 1e-6}) EXPECT_NEAR(solve_emcel(m, h, 0.4, 1e-14), 2.0 * std::sqrt(h), 1e-12);
}

TEST(SolveEmcel, AgreesWithStickyClosedForm) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    for (double theta : {0.5, 1.0, 2.0}) {
      const SpeedMeasure m = speed_measure(model::StickyBM{sigma, theta});
      for (double y : {-0.2, -0.01, 0.0, 0.003, 0.05}) {
        const double h = 1e-3;
        EXPECT_NEAR(solve_emcel(m, h, y, 1e-13), closed_form_sticky(sigma, theta, h, y), 1e-10)
            << sigma << " " << theta << " " << y;
      }
    }
  }
}

TEST(SolveEmcel, AgreesWithGbmClosedForm) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    const SpeedMeasure m = speed_measure(model::GeometricBM{sigma});
    for (double y : {0.1, 1.0, 5.0}) {
      const double h = 1e-2;
      EXPECT_NEAR(solve_emcel(m, h, y, 1e-13 * y), closed_form_gbm(sigma, h, y), 1e-10 * y);
    }
  }
}

TEST(SolveEmcel, SolutionSatisfiesExitTimeEquation) {
  const SpeedMeasure m = SpeedMeasure::from_components(StateSpace::real_line(), PiecewiseConstantDensity::constant(2.0),
                                                       {{0.02, 0.5}}, std::make_shared<cantor::CantorSingularPart>());
  const double h = 1e-3;
  for (double y : {-0.05, 0.0, 0.02, 0.3, 0.6}) {
    const double a = solve_emcel(m, h, y, 1e-14);
    EXPECT_NEAR(exit_time_functional(m, y, a), h, 1e-9 * h) << y;
  }
}

TEST(SolveEmcel, BoundaryShortWhenTentCannotReachH) {
  const SpeedMeasure m = SpeedMeasure::from_components(
      StateSpace(0.0, 1.0, BoundaryBehavior::Absorbing, BoundaryBehavior::Absorbing),
      PiecewiseConstantDensity::constant(2.0));
  const ScaleEvaluation e = solve_emcel_detailed(m, 1.0, 0.1, 1e-12);
  EXPECT_TRUE(e.boundary_short);
  EXPECT_DOUBLE_EQ(e.value, 0.1);
  const ScaleEvaluation inner = solve_emcel_detailed(m, 1e-4, 0.5, 1e-12);
  EXPECT_FALSE(inner.boundary_short);
  EXPECT_NEAR(inner.value, 1e-2, 1e-10);
}

TEST(ClosedForms, StickyLimitsAndMonotonicity) {
  const double h = 1e-3;
  // far from 0 the chain moves like sigma * Brownian motion
  EXPECT_DOUBLE_EQ(closed_form_sticky(1.5, 0.7, h, 0.5), 1.5 * std::sqrt(h));
  // at 0 the atom reduces the step: a^2 / sigma^2 + a / theta = h
  const double a0 = closed_form_sticky(1.0, 0.5, h, 0.0);
  EXPECT_NEAR(a0 * a0 + a0 / 0.5, h, 1e-15);
  double prev = 0.0;
  for (double theta : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double a = closed_form_sticky(1.0, theta, h, 0.0);
    EXPECT_GT(a, prev);
    EXPECT_LT(a, std::sqrt(h));
    prev = a;
  }
}

TEST(ClosedForms, GbmStableForSmallSteps) {
  EXPECT_NEAR(closed_form_gbm(1.0, 1e-12, 2.0), 2.0 * std::sqrt(1e-12), 1e-18);
  EXPECT_NEAR(closed_form_gbm(0.3, 0.5, 1.0), std::sqrt(1.0 - std::exp(-0.045)), 1e-15);
}

TEST(CantorEquation, LhsMatchesCellOracle) {
  const int n = 4;
  const auto c = cantor::set_intervals(n);
  for (double y : {-0.005, 0.0, 0.1, 0.33, 0.5, 0.71, 1.004}) {
    for (double a : {0.001, 0.004, 0.01, 0.2}) {
      EXPECT_NEAR(cantor_equation_lhs(c, n, y, a), oracle::cantor_equation_lhs(n, y, a), 1e-14) << y << " " << a;
    }
  }
}

TEST(CantorEquation, SolverBoundedByRootH) {
  const int n = 4;
  const double h = 1e-4;
  const auto c = cantor::set_intervals(n);
  for (int i = 0; i <= 400; ++i) {
    const double y = -0.2 + 1.4 * i / 400.0;
    const double a = solve_cantor(c, n, h, y, 1e-14);
    EXPECT_LE(a, std::sqrt(h));
    if (y < -std::sqrt(h) || y > 1.0 + std::sqrt(h)) EXPECT_EQ(a, std::sqrt(h));
    EXPECT_NEAR(oracle::cantor_equation_lhs(n, y, a), h, 1e-10 * h) << y;
  }
}
