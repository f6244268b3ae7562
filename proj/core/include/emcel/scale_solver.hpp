#pragma once

#include <span>

#include "emcel/cantor.hpp"
#include "emcel/scale_factor.hpp"
#include "emcel/speed_measure.hpp"

namespace emcel {

/// Default bisection tolerance, relative to the natural scale sqrt(h) of a_h.
double default_tolerance(double h);

/// sup{a >= 0 : y +- a in I and exit_time_functional(m, y, a) <= h}, to
/// within tol. Bisects the continuous increasing map a -> functional after
/// bracketing by doubling from sqrt(h / max(density(y), 1)).
ScaleEvaluation solve_emcel_detailed(const SpeedMeasure& m, double h, double y, double tol);
double solve_emcel(const SpeedMeasure& m, double h, double y, double tol);

/// EMCEL scale factor of sigma * (Brownian motion sticky at 0 with stickiness theta).
double closed_form_sticky(double sigma, double theta, double h, double y);

/// EMCEL scale factor of geometric Brownian motion: y sqrt(1 - exp(-sigma^2 h)).
double closed_form_gbm(double sigma, double h, double y);

/// Left-hand side of the level-n Cantor equation:
/// (1/2)(3/2)^n int_{y-a}^{y+a} 1_{C_n}(u)(a - |u - y|) du + a^2.
double cantor_equation_lhs(std::span<const cantor::Interval> intervals, int n, double y, double a);

/// Root in (0, sqrt(h)] of cantor_equation_lhs(a) = h; exactly sqrt(h) when
/// the tent of half-width sqrt(h) misses C_n.
double solve_cantor(std::span<const cantor::Interval> intervals, int n, double h, double y, double tol);
double solve_cantor(double h, int n, double y, double tol);

}  // namespace emcel
