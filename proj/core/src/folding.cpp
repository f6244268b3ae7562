#include "emcel/folding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "emcel/errors.hpp"

namespace emcel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxPieces = 1e7;

}  // namespace

FoldingMap::FoldingMap(Kind kind, double left, double right) : kind_(kind), left_(left), right_(right) {}

FoldingMap FoldingMap::half_line(double l) {
  if (!std::isfinite(l)) throw DomainError("a reflecting boundary must be finite");
  return FoldingMap(Kind::HalfLineLower, l, kInf);
}

FoldingMap FoldingMap::half_line_upper(double r) {
  if (!std::isfinite(r)) throw DomainError("a reflecting boundary must be finite");
  return FoldingMap(Kind::HalfLineUpper, -kInf, r);
}

FoldingMap FoldingMap::two_sided(double l, double r) {
  if (!std::isfinite(l) || !std::isfinite(r)) throw DomainError("reflecting boundaries must be finite");
  if (!(l < r)) throw DomainError("two-sided folding needs l < r");
  return FoldingMap(Kind::TwoSidedPeriodic, l, r);
}

double FoldingMap::apply(double x) const {
  switch (kind_) {
    case Kind::HalfLineLower:
      return left_ + std::abs(x - left_);
    case Kind::HalfLineUpper:
      return right_ - std::abs(right_ - x);
    case Kind::TwoSidedPeriodic: {
      const double width = right_ - left_;
      const double s = (x - left_) / width;
      const double t = s - 2.0 * std::floor(0.5 * s);  // in [0, 2)
      const double f = t <= 1.0 ? t : 2.0 - t;
      return std::clamp(left_ + width * f, left_, right_);
    }
  }
  return x;
}

void FoldingMap::for_each_piece(double lo, double hi,
                                const std::function<void(double, double, double, double)>& f) const {
  if (!(hi > lo)) return;
  switch (kind_) {
    case Kind::HalfLineLower: {
      const double l = left_;
      if (lo < l) {
        const double b = std::min(hi, l);
        f(lo, b, 2.0 * l - lo, 2.0 * l - b);
      }
      if (hi > l) {
        const double a = std::max(lo, l);
        f(a, hi, a, hi);
      }
      return;
    }
    case Kind::HalfLineUpper: {
      const double r = right_;
      if (lo < r) {
        const double b = std::min(hi, r);
        f(lo, b, lo, b);
      }
      if (hi > r) {
        const double a = std::max(lo, r);
        f(a, hi, 2.0 * r - a, 2.0 * r - hi);
      }
      return;
    }
    case Kind::TwoSidedPeriodic: {
      if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("periodic folding needs a bounded window");
      const double width = right_ - left_;
      if ((hi - lo) / width > kMaxPieces) throw DomainError("window too wide for periodic folding");
      auto k = static_cast<long long>(std::floor((lo - left_) / width)) - 1;
      for (;; ++k) {
        const double start = left_ + static_cast<double>(k) * width;
        if (start >= hi) break;
        const double end = left_ + static_cast<double>(k + 1) * width;
        const double a = std::max(lo, start);
        const double b = std::min(hi, end);
        if (!(b > a)) continue;
        const bool rising = (k % 2 == 0);
        auto image = [&](double x) {
          const double v = rising ? left_ + (x - start) : right_ - (x - start);
          return std::clamp(v, left_, right_);
        };
        f(a, b, image(a), image(b));
      }
      return;
    }
  }
}

void FoldingMap::for_each_fold_point(double lo, double hi, const std::function<void(double, double)>& f) const {
  switch (kind_) {
    case Kind::HalfLineLower:
      if (lo < left_ && left_ < hi) f(left_, left_);
      return;
    case Kind::HalfLineUpper:
      if (lo < right_ && right_ < hi) f(right_, right_);
      return;
    case Kind::TwoSidedPeriodic: {
      if (!std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("periodic folding needs a bounded window");
      const double width = right_ - left_;
      if ((hi - lo) / width > kMaxPieces) throw DomainError("window too wide for periodic folding");
      auto k = static_cast<long long>(std::floor((lo - left_) / width)) - 1;
      for (;; ++k) {
        const double x = left_ + static_cast<double>(k) * width;
        if (x >= hi) break;
        if (x > lo) f(x, k % 2 == 0 ? left_ : right_);
      }
      return;
    }
  }
}

bool FoldingMap::is_fold_point(double x, double& image) const {
  switch (kind_) {
    case Kind::HalfLineLower:
      image = left_;
      return x == left_;
    case Kind::HalfLineUpper:
      image = right_;
      return x == right_;
    case Kind::TwoSidedPeriodic: {
      const double width = right_ - left_;
      const auto k = std::llround((x - left_) / width);
      if (left_ + static_cast<double>(k) * width != x) return false;
      image = (k % 2 == 0) ? left_ : right_;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

FoldedPart::FoldedPart(PartPtr base, FoldingMap map) : base_(std::move(base)), map_(map) {
  if (!base_) throw DomainError("folded part needs a base part");
}

double FoldedPart::integrate(const LinearKernel& k) const {
  if (!(k.hi > k.lo)) return 0.0;
  const bool bounded = std::isfinite(k.lo) && std::isfinite(k.hi);
  if (!bounded && map_.kind() == FoldingMap::Kind::TwoSidedPeriodic) {
    if (!k.is_constant()) throw DomainError("unbounded window needs a constant kernel");
    if (k.k_lo == 0.0) return 0.0;
    const double cell = base_->integrate(LinearKernel::constant(map_.left(), map_.right(), 1.0)) +
                        base_->point_mass(map_.left()) + base_->point_mass(map_.right());
    return cell > 0.0 ? std::copysign(kInf, k.k_lo) : 0.0;
  }

  double total = 0.0;
  map_.for_each_piece(k.lo, k.hi, [&](double a, double b, double ia, double ib) {
    const double ka = k.at(a);
    const double kb = k.at(b);
    if (ia <= ib)
      total += base_->integrate({ia, ib, ka, kb});
    else
      total += base_->integrate({ib, ia, kb, ka});
  });
  map_.for_each_fold_point(k.lo, k.hi, [&](double x, double image) {
    const double w = k.at(x);
    if (w != 0.0) total += w * 2.0 * base_->point_mass(image);
  });
  return total;
}

double FoldedPart::point_mass(double x) const {
  double image = 0.0;
  if (map_.is_fold_point(x, image)) return 2.0 * base_->point_mass(image);
  return base_->point_mass(map_.apply(x));
}

double FoldedPart::density(double x) const { return base_->density(map_.apply(x)); }

// ---------------------------------------------------------------------------

ExtendedMeasure extend_measure(const SpeedMeasure& m) {
  const StateSpace& sp = m.space();
  const bool left_reflecting = sp.left_behavior() == BoundaryBehavior::Reflecting;
  const bool right_reflecting = sp.right_behavior() == BoundaryBehavior::Reflecting;
  if (!left_reflecting && !right_reflecting)
    throw DomainError("extend_measure: the state space has no reflecting boundary");

  auto build = [&](const FoldingMap& fold, const StateSpace& space) {
    std::vector<PartPtr> parts;
    for (const auto& p : m.parts()) parts.push_back(std::make_shared<FoldedPart>(p, fold));
    return ExtendedMeasure{SpeedMeasure(space, std::move(parts)), fold};
  };

  if (left_reflecting && right_reflecting)
    return build(FoldingMap::two_sided(sp.left(), sp.right()), StateSpace::real_line());

  if (left_reflecting) {
    const double l = sp.left();
    const double r = sp.right();
    if (std::isinf(r)) return build(FoldingMap::half_line(l), StateSpace::real_line());
    return build(FoldingMap::half_line(l), StateSpace(2.0 * l - r, r, sp.right_behavior(), sp.right_behavior()));
  }

  const double l = sp.left();
  const double r = sp.right();
  if (std::isinf(l)) return build(FoldingMap::half_line_upper(r), StateSpace::real_line());
  return build(FoldingMap::half_line_upper(r), StateSpace(l, 2.0 * r - l, sp.left_behavior(), sp.left_behavior()));
}

}  // namespace emcel
