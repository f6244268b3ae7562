#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library; the code is deliberately naive.

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

/// Cantor function from ternary digits in long double arithmetic.
inline double cantor_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  long double v = x;
  long double result = 0.0L;
  long double bit = 0.5L;
  for (int i = 0; i < 60; ++i) {
    v *= 3.0L;
    const int digit = static_cast<int>(std::floor(v));
    v -= digit;
    if (digit == 1) return static_cast<double>(result + bit);
    if (digit == 2) result += bit;
    bit *= 0.5L;
  }
  return static_cast<double>(result);
}

/// Whether u lies in the level-n Cantor approximation C_n, read from the
/// first n ternary digits of u (u must be away from cell boundaries).
inline bool in_cantor_level(double u, int n) {
  if (u < 0.0 || u > 1.0) return false;
  long double v = u;
  for (int i = 0; i < n; ++i) {
    v *= 3.0L;
    const int digit = static_cast<int>(std::floor(v));
    if (digit == 1) return false;
    v -= digit;
  }
  return true;
}

/// Plain description of a speed measure: density + atoms + weight * m_C.
struct PlainMeasure {
  std::function<double(double)> density;
  std::vector<std::pair<double, double>> atoms;  // (position, mass)
  double cantor_weight = 0.0;
};

/// Integral of f over (lo, hi) against the measure, by the composite
/// midpoint rule for the density, a Stieltjes sum for the Cantor part and
/// exact sums for atoms strictly inside.
inline double integrate(const PlainMeasure& m, const std::function<double(double)>& f, double lo, double hi,
                        std::size_t cells = 200000) {
  double total = 0.0;
  const double dx = (hi - lo) / static_cast<double>(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double u = lo + (static_cast<double>(i) + 0.5) * dx;
    if (m.density) total += f(u) * m.density(u) * dx;
    if (m.cantor_weight != 0.0) {
      const double a = lo + static_cast<double>(i) * dx;
      const double b = a + dx;
      total += m.cantor_weight * f(u) * (cantor_cdf(b) - cantor_cdf(a));
    }
  }
  for (const auto& [x, mass] : m.atoms) {
    if (lo < x && x < hi) total += f(x) * mass;
  }
  return total;
}

/// (1/2) * integral over (y - a, y + a) of (a - |u - y|) m(du).
inline double tent(const PlainMeasure& m, double y, double a, std::size_t cells = 200000) {
  return 0.5 * integrate(m, [y, a](double u) { return a - std::abs(u - y); }, y - a, y + a, cells);
}

/// Left side of the level-n Cantor equation,
/// (1/2)(3/2)^n int 1_{C_n}(u)(a - |u - y|) du + a^2, integrating the tent
/// exactly on every cell of width 3^-n whose midpoint lies in C_n.
inline double cantor_equation_lhs(int n, double y, double a) {
  const double width = std::pow(3.0, -n);
  const auto cells = static_cast<long>(std::llround(std::pow(3.0, n)));
  auto tent_integral = [y, a](double lo, double hi) {
    // exact integral of max(a - |u - y|, 0) over [lo, hi], split at y - a, y, y + a
    double total = 0.0;
    const double cuts[] = {y - a, y, y + a};
    double pts[5] = {lo, 0, 0, 0, hi};
    int count = 1;
    for (double c : cuts) {
      if (c > lo && c < hi) pts[count++] = c;
    }
    pts[count++] = hi;
    for (int i = 0; i + 1 < count; ++i) {
      const double p = pts[i];
      const double q = pts[i + 1];
      const double fp = std::max(a - std::abs(p - y), 0.0);
      const double fq = std::max(a - std::abs(q - y), 0.0);
      total += 0.5 * (fp + fq) * (q - p);
    }
    return total;
  };
  double integral = 0.0;
  for (long i = 0; i < cells; ++i) {
    const double lo = static_cast<double>(i) * width;
    const double hi = static_cast<double>(i + 1) * width;
    if (!in_cantor_level(0.5 * (lo + hi), n)) continue;
    integral += tent_integral(lo, hi);
  }
  return 0.5 * std::pow(1.5, n) * integral + a * a;
}

}  // namespace oracle
