#include "emcel/reference_laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "emcel/errors.hpp"

namespace emcel {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double mills_ratio(double w) {
  if (!(w >= 0.0)) throw DomainError("mills_ratio needs w >= 0");
  if (std::isinf(w)) return 0.0;
  if (w <= 35.0) return 0.5 * std::erfc(w / std::numbers::sqrt2) / normal_pdf(w);
  // asymptotic series 1/w (1 - 1/w^2 + 3/w^4 - 15/w^6 + 105/w^8)
  const double u = 1.0 / (w * w);
  return (1.0 - u * (1.0 - u * (3.0 - u * (15.0 - 105.0 * u)))) / w;
}

double reflected_sticky_cdf(double z, double t, double theta) {
  if (!(t > 0.0) || !(theta > 0.0)) throw DomainError("reflected_sticky_cdf needs t > 0 and theta > 0");
  if (!(z >= 0.0)) throw DomainError("reflected_sticky_cdf needs z >= 0");
  if (std::isinf(z)) return 1.0;
  const double root_t = std::sqrt(t);
  const double x = z / root_t;
  // exp(2 theta (z + theta t)) Phi(-w) = phi(x) R(w) with w = 2 theta sqrt(t) + x
  const double w = 2.0 * theta * root_t + x;
  const double value = std::erf(x / std::numbers::sqrt2) + 2.0 * normal_pdf(x) * mills_ratio(w);
  return std::min(1.0, std::max(0.0, value));
}

double reflected_sticky_mean(double t, double theta) {
  if (!(t > 0.0) || !(theta > 0.0)) throw DomainError("reflected_sticky_mean needs t > 0 and theta > 0");
  const double root_t = std::sqrt(t);
  // exp(2 theta^2 t) Phi(-2 theta sqrt(t)) = phi(0) R(2 theta sqrt(t))
  return std::sqrt(2.0 * t / std::numbers::pi) - 1.0 / (2.0 * theta) +
         kInvSqrt2Pi * mills_ratio(2.0 * theta * root_t) / theta;
}

}  // namespace emcel
