#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "emcel/cantor.hpp"
#include "emcel/errors.hpp"
#include "emcel/functionals.hpp"
#include "oracles.hpp"

using namespace emcel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpeedMeasure lebesgue(double c) {
  return SpeedMeasure::from_components(StateSpace::real_line(), PiecewiseConstantDensity::constant(c));
}

}  // namespace

TEST(ExitTimeFunctional, BrownianTentIsQuadratic) {
  // density 2/sigma^2 gives a^2 / sigma^2
  const SpeedMeasure m = lebesgue(2.0 / (0.5 * 0.5));
  for (double a : {0.0, 0.01, 0.3, 2.0}) EXPECT_NEAR(exit_time_functional(m, 0.7, a), a * a / 0.25, 1e-12);
}

TEST(ExitTimeFunctional, AtomAtCentreAddsHalfAWeightedByMass) {
  const SpeedMeasure m =
      SpeedMeasure::from_components(StateSpace::real_line(), PiecewiseConstantDensity::constant(2.0), {{0.0, 4.0}});
  EXPECT_NEAR(exit_time_functional(m, 0.0, 0.1), 0.01 + 0.5 * 0.1 * 4.0, 1e-14);
  // atom at distance exactly a is excluded (open interval)
  EXPECT_NEAR(exit_time_functional(m, 0.1, 0.1), 0.01, 1e-14);
  EXPECT_NEAR(exit_time_functional(m, 0.05, 0.1), 0.01 + 0.5 * 0.05 * 4.0, 1e-14);
}

TEST(ExitTimeFunctional, MatchesBruteForceOnMixedMeasure) {
  const auto density = std::make_shared<PiecewiseConstantDensity>(
      0.5, std::vector<PiecewiseConstantDensity::Segment>{{0.2, 0.6, 3.0}});
  const SpeedMeasure m = SpeedMeasure::from_components(StateSpace::real_line(), density, {{0.45, 0.7}, {1.1, 0.2}},
                                                       std::make_shared<cantor::CantorSingularPart>());
  oracle::PlainMeasure plain{[](double u) { return 0.5 + ((u >= 0.2 && u <= 0.6) ? 3.0 : 0.0); },
                             {{0.45, 0.7}, {1.1, 0.2}},
                             1.0};
  for (auto [y, a] : {std::pair{0.3, 0.25}, std::pair{0.9, 0.3}, std::pair{-0.1, 0.5}, std::pair{0.5, 0.05}})
    EXPECT_NEAR(exit_time_functional(m, y, a), oracle::tent(plain, y, a), 2e-6) << "y=" << y << " a=" << a;
}

TEST(ExitTimeFunctional, InfiniteAtInaccessibleEndpoint) {
  const SpeedMeasure m = SpeedMeasure::from_components(
      StateSpace(0.0, kInf), std::make_shared<FunctionDensity>([](double x) { return 2.0 / (x * x); }));
  EXPECT_TRUE(std::isinf(exit_time_functional(m, 1.0, 1.0)));
  EXPECT_TRUE(std::isfinite(exit_time_functional(m, 1.0, 0.5)));
  EXPECT_THROW(exit_time_functional(m, 1.0, 1.5), DomainError);
  EXPECT_THROW(exit_time_functional(m, 0.0, 0.1), DomainError);
}

TEST(ExitTimeFunctional, FiniteAtAbsorbingEndpoint) {
  const SpeedMeasure m = SpeedMeasure::from_components(
      StateSpace(0.0, 1.0, BoundaryBehavior::Absorbing, BoundaryBehavior::Absorbing),
      PiecewiseConstantDensity::constant(2.0));
  EXPECT_NEAR(exit_time_functional(m, 0.5, 0.5), 0.25, 1e-14);
}

TEST(QFunction, BrownianValue) {
  // q(y, x) = integral of m((y, u)) du = (x - y)^2 for density 2
  const SpeedMeasure m = lebesgue(2.0);
  EXPECT_NEAR(q_function(m, 0.3, 1.3), 1.0, 1e-14);
  EXPECT_NEAR(q_function(m, 0.3, -0.7), 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(q_function(m, 0.3, 0.3), 0.0);
}

TEST(QFunction, FellerTestAtEndpoints) {
  const SpeedMeasure gbm = SpeedMeasure::from_components(
      StateSpace(0.0, kInf), std::make_shared<FunctionDensity>([](double x) { return 2.0 / (x * x); }));
  EXPECT_TRUE(std::isinf(q_function(gbm, 1.0, 0.0)));
  const SpeedMeasure absorbed = SpeedMeasure::from_components(
      StateSpace(0.0, 2.0, BoundaryBehavior::Absorbing, BoundaryBehavior::Absorbing),
      PiecewiseConstantDensity::constant(2.0));
  EXPECT_NEAR(q_function(absorbed, 1.0, 0.0), 1.0, 1e-14);
}

TEST(GreenFunction, PeakValueAndBrownianExitTime) {
  // Brownian motion: E_y H = (beta - y)(y - alpha)
  const SpeedMeasure m = lebesgue(2.0);
  EXPECT_NEAR(green_exit_expectation(m, 0.2, -1.0, 2.0), 1.8 * 1.2, 1e-13);
  // unit atom at y only: G(y, y) = (beta - y)(y - alpha)/(beta - alpha)
  const auto empty = PiecewiseConstantDensity::constant(0.0);
  const SpeedMeasure atom = SpeedMeasure::from_components(StateSpace::real_line(), empty, {{0.2, 1.0}});
  EXPECT_NEAR(green_exit_expectation(atom, 0.2, -1.0, 2.0), 1.8 * 1.2 / 3.0, 1e-14);
}

TEST(MeasureIdentities, HoldOnRandomMixedMeasures) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PiecewiseConstantDensity::Segment> segs{{-0.5 + unif(rng) * 0.2, 0.1 + unif(rng) * 0.3, unif(rng)}};
    const auto density = std::make_shared<PiecewiseConstantDensity>(0.1 + unif(rng), segs);
    const SpeedMeasure m = SpeedMeasure::from_components(
        StateSpace::real_line(), density, {{0.25, unif(rng)}, {0.8, unif(rng)}},
        std::make_shared<ScaledPart>(std::make_shared<cantor::CantorSingularPart>(), unif(rng)));
    const double y = -0.5 + 2.0 * unif(rng);
    const double a = 0.01 + unif(rng);
    const double tent = exit_time_functional(m, y, a);
    EXPECT_NEAR(tent, green_exit_expectation(m, y, y - a, y + a), 1e-9 * std::max(1.0, tent));
    EXPECT_NEAR(tent, 0.5 * (q_function(m, y, y - a) + q_function(m, y, y + a)), 1e-9 * std::max(1.0, tent));
  }
}
