#pragma once

#include "emcel/speed_measure.hpp"

namespace emcel {

/// m((a, b)). Endpoints may be infinite when they coincide with infinite
/// ends of the state space. Atoms sitting at a or b are excluded.
double measure_of_open_interval(const SpeedMeasure& m, double a, double b);

/// (1/2) * integral over (y - a, y + a) of (a - |u - y|) m(du), which is the
/// expected exit time of the diffusion from (y - a, y + a) when started at y.
/// Returns +inf when the tent reaches an inaccessible finite endpoint.
double exit_time_functional(const SpeedMeasure& m, double y, double a);

/// q(y, x) = m({y}) |x - y| / 2 + integral from y to x of m((y, u)) du, with the
/// signed convention m((y, u)) = -m((u, y)) for u < y. +inf exactly when x is
/// an inaccessible finite endpoint (Feller's test).
double q_function(const SpeedMeasure& m, double y, double x);

/// E_y[H_{alpha,beta}] as the integral of the Green function
/// G(y, u) = (beta - max(y,u)) (min(y,u) - alpha) / (beta - alpha) against m.
double green_exit_expectation(const SpeedMeasure& m, double y, double alpha, double beta);

}  // namespace emcel
