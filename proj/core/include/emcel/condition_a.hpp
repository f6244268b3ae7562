#pragma once

#include <functional>
#include <span>
#include <vector>

#include "emcel/scale_factor.hpp"
#include "emcel/speed_measure.hpp"

namespace emcel {

struct CompactInterval {
  double lo;
  double hi;
};

struct ConditionARow {
  double h;
  double sup_ratio;  // sup over the grid of |functional(y, a_h(y)) - h| / h
};

using ScaleFactorFamily = std::function<ScaleFactor(double h)>;

/// Empirical check of the o(h) accuracy requirement on a scale-factor family:
/// for each h, the worst relative deviation of the expected exit time from h
/// over a uniform grid on K. A family passes when the ratios decrease to 0.
std::vector<ConditionARow> condition_a_diagnostic(const SpeedMeasure& m, const ScaleFactorFamily& family,
                                                  CompactInterval k, std::span<const double> h_list,
                                                  int grid_points);

}  // namespace emcel
