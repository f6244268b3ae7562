#pragma once

#include <span>
#include <utility>
#include <vector>

#include "emcel/measure_parts.hpp"

namespace emcel::cantor {

struct Interval {
  double left;
  double right;
};

/// Largest supported construction level (2^n intervals).
inline constexpr int kMaxLevel = 40;

/// The 2^n closed intervals of C_n, sorted, each of length 3^-n, with
/// C_0 = [0,1] and C_n = C_{n-1}/3 u (C_{n-1}+2)/3.
std::vector<Interval> set_intervals(int n);

/// Cantor function (distribution function of the Cantor distribution),
/// evaluated from the exact ternary expansion of x.
double cdf(double x);

/// Integral of the Cantor function from 0 to x (0 for x <= 0).
double cdf_primitive(double x);

/// Distribution function of m_n(dx) = (3/2)^n 1_{C_n}(x) dx, from the
/// interval list of C_n.
double level_cdf(std::span<const Interval> intervals, int n, double x);

/// max over the grid of |cdf(x) - level_cdf(x)|.
double cdf_bound_check(int n, std::span<const double> grid);

/// Smallest level with 2^n sqrt(h) >= 1/sqrt(h), i.e. n = ceil(log2(1/h)).
int default_level(double h);

/// The Cantor distribution m_C as a singular measure part with exact
/// CDF-increment integrals.
class CantorSingularPart final : public SingularPart {
 public:
  double cdf(double x) const override;
  double increment_integral(double a, double b) const override;
};

/// m_n as a piecewise-constant density part.
PartPtr level_density(int n);

}  // namespace emcel::cantor
