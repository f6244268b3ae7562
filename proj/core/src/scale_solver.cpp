#include "emcel/scale_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emcel/errors.hpp"
#include "emcel/functionals.hpp"

namespace emcel {

namespace {

constexpr int kMaxDoublings = 64;
constexpr int kMaxBisections = 400;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

double default_tolerance(double h) { return 1e-10 * std::sqrt(h); }

ScaleEvaluation solve_emcel_detailed(const SpeedMeasure& m, double h, double y, double tol) {
  require_positive(h, "h");
  require_positive(tol, "tol");
  if (!std::isfinite(y) || !m.space().in_interior(y))
    throw DomainError("solve_emcel: y = " + std::to_string(y) + " is not an interior point");

  const double a_max = m.space().distance_to_boundary(y);
  const double local = m.density(y);
  double a = std::sqrt(h / std::max(std::isfinite(local) ? local : 1.0, 1.0));
  a = std::min(a, a_max);

  double lo = 0.0;
  double hi = -1.0;
  for (int i = 0; i <= kMaxDoublings; ++i) {
    if (exit_time_functional(m, y, a) > h) {
      hi = a;
      break;
    }
    lo = a;
    if (a == a_max) return {a_max, true};
    a = std::min(2.0 * a, a_max);
  }
  if (hi < 0.0)
    throw NumericError("solve_emcel: could not bracket the exit-time equation at y = " + std::to_string(y) +
                       " (no speed-measure mass near y?)");

  for (int i = 0; i < kMaxBisections && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (exit_time_functional(m, y, mid) > h)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, false};
}

double solve_emcel(const SpeedMeasure& m, double h, double y, double tol) {
  return solve_emcel_detailed(m, h, y, tol).value;
}

double closed_form_sticky(double sigma, double theta, double h, double y) {
  require_positive(sigma, "sigma");
  require_positive(theta, "theta");
  require_positive(h, "h");
  if (!std::isfinite(y)) throw DomainError("y must be finite");
  const double root_h = sigma * std::sqrt(h);
  const double ay = std::abs(y);
  if (ay >= root_h) return root_h;
  // sigma (sqrt(c^2 + d) - c) with c = sigma/(2 theta), d = h + |y|/theta, in cancellation-free form
  const double c = sigma / (2.0 * theta);
  const double d = h + ay / theta;
  return sigma * d / (std::sqrt(c * c + d) + c);
}

double closed_form_gbm(double sigma, double h, double y) {
  require_positive(sigma, "sigma");
  require_positive(h, "h");
  require_positive(y, "y");
  return y * std::sqrt(-std::expm1(-sigma * sigma * h));
}

namespace {

// int_{y-a}^{y+a} 1_{C_n}(u)(a - |u - y|) du, exact from the interval list
double cantor_tent(std::span<const cantor::Interval> intervals, double y, double a) {
  const double lo = y - a;
  const double hi = y + a;
  const LinearKernel left{lo, y, 0.0, a};
  const LinearKernel right{y, hi, a, 0.0};
  auto it = std::upper_bound(intervals.begin(), intervals.end(), lo,
                             [](double v, const cantor::Interval& iv) { return v < iv.right; });
  double tent = 0.0;
  for (; it != intervals.end() && it->left < hi; ++it) {
    tent += left.integral(std::max(it->left, lo), std::min(it->right, y));
    tent += right.integral(std::max(it->left, y), std::min(it->right, hi));
  }
  return tent;
}

}  // namespace

double cantor_equation_lhs(std::span<const cantor::Interval> intervals, int n, double y, double a) {
  if (!(a > 0.0)) return 0.0;
  return 0.5 * std::pow(1.5, n) * cantor_tent(intervals, y, a) + a * a;
}

double solve_cantor(std::span<const cantor::Interval> intervals, int n, double h, double y, double tol) {
  require_positive(h, "h");
  require_positive(tol, "tol");
  if (!std::isfinite(y)) throw DomainError("y must be finite");
  const double root_h = std::sqrt(h);
  if (cantor_tent(intervals, y, root_h) == 0.0) return root_h;  // the tent misses C_n

  double lo = 0.0;
  double hi = root_h;
  for (int i = 0; i < kMaxBisections && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cantor_equation_lhs(intervals, n, y, mid) > h)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double solve_cantor(double h, int n, double y, double tol) {
  const auto intervals = cantor::set_intervals(n);
  return solve_cantor(intervals, n, h, y, tol);
}

}  // namespace emcel
