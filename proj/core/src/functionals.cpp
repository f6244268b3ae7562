#include "emcel/functionals.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "emcel/errors.hpp"

namespace emcel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_interior(const StateSpace& space, double y) {
  require_finite(y, "y");
  if (!space.in_interior(y))
    throw DomainError("y = " + std::to_string(y) + " is not in the interior of the state space");
}

void require_closure(const StateSpace& space, double x, const char* what) {
  if (!space.in_closure(x))
    throw DomainError(std::string(what) + " = " + std::to_string(x) +
                      " is outside the closure of the state space");
}

}  // namespace

double measure_of_open_interval(const SpeedMeasure& m, double a, double b) {
  const auto& space = m.space();
  if (std::isnan(a) || std::isnan(b)) throw DomainError("interval endpoint is NaN");
  if (!(a <= b)) throw DomainError("measure_of_open_interval requires a <= b");
  const bool a_ok = space.in_closure(a) || (std::isinf(a) && a == space.left());
  const bool b_ok = space.in_closure(b) || (std::isinf(b) && b == space.right());
  if (!a_ok || !b_ok) throw DomainError("interval is not contained in the closure of the state space");
  if (a == b) return 0.0;
  return m.integrate(LinearKernel::constant(a, b, 1.0));
}

double exit_time_functional(const SpeedMeasure& m, double y, double a) {
  const auto& space = m.space();
  require_interior(space, y);
  require_finite(a, "a");
  if (a < 0.0) throw DomainError("tent half-width must be nonnegative");
  if (a == 0.0) return 0.0;
  const double lo = y - a;
  const double hi = y + a;
  require_closure(space, lo, "y - a");
  require_closure(space, hi, "y + a");
  if (space.is_inaccessible_endpoint(lo) || space.is_inaccessible_endpoint(hi)) return kInf;

  const double peak = 0.5 * a;
  return m.integrate({lo, y, 0.0, peak}) + m.integrate({y, hi, peak, 0.0}) + peak * m.point_mass(y);
}

double q_function(const SpeedMeasure& m, double y, double x) {
  const auto& space = m.space();
  require_interior(space, y);
  require_closure(space, x, "x");
  if (x == y) return 0.0;
  if (space.is_inaccessible_endpoint(x)) return kInf;

  const double dist = std::abs(x - y);
  const double at_y = 0.5 * m.point_mass(y) * dist;
  // integral_y^x m((y,u)) du = integral over the open interval between y and x of |x - v| m(dv)
  if (x > y) return at_y + m.integrate({y, x, dist, 0.0});
  return at_y + m.integrate({x, y, 0.0, dist});
}

double green_exit_expectation(const SpeedMeasure& m, double y, double alpha, double beta) {
  const auto& space = m.space();
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  require_finite(y, "y");
  if (!(alpha < y && y < beta)) throw DomainError("green_exit_expectation requires alpha < y < beta");
  require_closure(space, alpha, "alpha");
  require_closure(space, beta, "beta");
  if (space.is_inaccessible_endpoint(alpha) || space.is_inaccessible_endpoint(beta)) return kInf;

  const double peak = (beta - y) * (y - alpha) / (beta - alpha);
  return m.integrate({alpha, y, 0.0, peak}) + m.integrate({y, beta, peak, 0.0}) +
         peak * m.point_mass(y);
}

}  // namespace emcel
