#pragma once

namespace emcel {

/// Standard normal distribution function, via erfc.
double normal_cdf(double x);

/// Phi(-w) / phi(w) for w >= 0.
double mills_ratio(double w);

/// P_0[Z_t <= z] for Brownian motion (sigma = 1) on [0, inf) with slow
/// reflection at 0 of stickiness theta. The jump at z = 0 is P_0[Z_t = 0].
double reflected_sticky_cdf(double z, double t, double theta);

/// E_0[Z_t] for the same process.
double reflected_sticky_mean(double t, double theta);

}  // namespace emcel
