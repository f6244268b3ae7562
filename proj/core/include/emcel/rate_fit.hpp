#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace emcel {

struct RatePoint {
  double log2_inv_h;
  double log2_abs_error;
};

struct RateFit {
  std::vector<RatePoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  /// Number of zero errors replaced by machine epsilon before taking logs.
  std::size_t replaced_zeros = 0;
};

/// Ordinary least-squares line through (-log2 h, log2 error) for pairs
/// (h, abs_error). Needs at least two distinct h values.
RateFit rate_fit(std::span<const std::pair<double, double>> errors);

}  // namespace emcel
