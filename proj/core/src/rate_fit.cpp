#include "emcel/rate_fit.hpp"

#include <cmath>
#include <limits>

#include "emcel/errors.hpp"

namespace emcel {

RateFit rate_fit(std::span<const std::pair<double, double>> errors) {
  if (errors.size() < 2) throw DomainError("rate_fit needs at least two points");
  RateFit fit;
  fit.points.reserve(errors.size());
  for (const auto& [h, err] : errors) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("rate_fit: h must be positive and finite");
    if (!(err >= 0.0) || !std::isfinite(err)) throw DomainError("rate_fit: errors must be nonnegative and finite");
    double e = err;
    if (e == 0.0) {
      e = std::numeric_limits<double>::epsilon();
      ++fit.replaced_zeros;
    }
    fit.points.push_back({-std::log2(h), std::log2(e)});
  }

  const auto n = static_cast<double>(fit.points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : fit.points) {
    mx += p.log2_inv_h;
    my += p.log2_abs_error;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : fit.points) {
    sxx += (p.log2_inv_h - mx) * (p.log2_inv_h - mx);
    sxy += (p.log2_inv_h - mx) * (p.log2_abs_error - my);
  }
  if (!(sxx > 0.0)) throw DomainError("rate_fit needs at least two distinct h values");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace emcel
