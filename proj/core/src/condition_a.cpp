#include "emcel/condition_a.hpp"

#include <algorithm>
#include <cmath>

#include "emcel/errors.hpp"
#include "emcel/functionals.hpp"

namespace emcel {

std::vector<ConditionARow> condition_a_diagnostic(const SpeedMeasure& m, const ScaleFactorFamily& family,
                                                  CompactInterval k, std::span<const double> h_list,
                                                  int grid_points) {
  if (!family) throw DomainError("scale-factor family is empty");
  if (grid_points < 1) throw DomainError("grid_points must be positive");
  if (!(k.lo <= k.hi) || !m.space().in_interior(k.lo) || !m.space().in_interior(k.hi))
    throw DomainError("K must be a compact interval inside the interior of the state space");
  for (std::size_t i = 0; i < h_list.size(); ++i) {
    if (!(h_list[i] > 0.0)) throw DomainError("h values must be positive");
    if (i > 0 && !(h_list[i] < h_list[i - 1])) throw DomainError("h_list must be strictly decreasing");
  }

  std::vector<ConditionARow> rows;
  rows.reserve(h_list.size());
  for (double h : h_list) {
    const ScaleFactor sf = family(h);
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
      const double y =
          grid_points == 1 ? k.lo : k.lo + (k.hi - k.lo) * static_cast<double>(i) / (grid_points - 1);
      const double value = exit_time_functional(m, y, sf(y));
      worst = std::max(worst, std::abs(value - h) / h);
    }
    rows.push_back({h, worst});
  }
  return rows;
}

}  // namespace emcel
