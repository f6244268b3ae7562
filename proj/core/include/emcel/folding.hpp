#pragma once

#include <functional>

#include "emcel/measure_parts.hpp"
#include "emcel/speed_measure.hpp"

namespace emcel {

/// 1-Lipschitz map from an extended state space onto a space with reflecting
/// boundaries: x -> l + |x - l| (lower half line), x -> r - |r - x| (upper
/// half line) or the period-2(r-l) tent map onto [l, r] (two reflecting ends).
class FoldingMap {
 public:
  enum class Kind { HalfLineLower, HalfLineUpper, TwoSidedPeriodic };

  static FoldingMap half_line(double l);
  static FoldingMap half_line_upper(double r);
  static FoldingMap two_sided(double l, double r);

  Kind kind() const { return kind_; }
  double left() const { return left_; }
  double right() const { return right_; }

  double apply(double x) const;
  double operator()(double x) const { return apply(x); }

  /// Calls f(a, b, image_a, image_b) for the maximal sub-intervals of [lo, hi]
  /// on which the map is affine, in ascending order.
  void for_each_piece(double lo, double hi, const std::function<void(double, double, double, double)>& f) const;
  /// Calls f(x, image) for each fold point x strictly inside (lo, hi).
  void for_each_fold_point(double lo, double hi, const std::function<void(double, double)>& f) const;
  /// Whether x is a fold point; sets image to its image when it is.
  bool is_fold_point(double x, double& image) const;

 private:
  FoldingMap(Kind kind, double left, double right);

  Kind kind_;
  double left_;
  double right_;
};

/// The unfolded copy of a measure part: mirrored (and, for two reflecting
/// ends, tiled with period 2(r-l)); point masses at fold points are doubled.
class FoldedPart final : public MeasurePart {
 public:
  FoldedPart(PartPtr base, FoldingMap map);

  double integrate(const LinearKernel& k) const override;
  double point_mass(double x) const override;
  double density(double x) const override;

 private:
  PartPtr base_;
  FoldingMap map_;
};

struct ExtendedMeasure {
  SpeedMeasure measure;
  FoldingMap fold;
};

/// Reduce reflecting boundaries to an extended measure whose boundaries are
/// inaccessible or absorbing. The folded extended diffusion has the law of
/// the reflected one.
ExtendedMeasure extend_measure(const SpeedMeasure& m);

}  // namespace emcel
