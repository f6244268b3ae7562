#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "emcel/quadrature.hpp"
#include "emcel/state_space.hpp"

namespace emcel {

/// Linear weight on an interval, given by its values at the two ends.
/// Infinite endpoints are allowed only for constant kernels.
struct LinearKernel {
  double lo;
  double hi;
  double k_lo;
  double k_hi;

  static LinearKernel constant(double lo, double hi, double value) { return {lo, hi, value, value}; }

  bool is_constant() const { return k_lo == k_hi; }
  double slope() const { return is_constant() ? 0.0 : (k_hi - k_lo) / (hi - lo); }
  double at(double u) const;
  /// Exact integral of the kernel over [a, b] (a sub-interval of [lo, hi]).
  double integral(double a, double b) const;
};

/// One additive component of a speed measure. `integrate` returns
/// the integral of the kernel over the OPEN interval (k.lo, k.hi).
class MeasurePart {
 public:
  virtual ~MeasurePart() = default;
  virtual double integrate(const LinearKernel& k) const = 0;
  virtual double point_mass(double /*x*/) const { return 0.0; }
  /// Lebesgue density of the absolutely continuous component at x.
  virtual double density(double /*x*/) const { return 0.0; }
  virtual void validate(const StateSpace& /*space*/) const {}
};

using PartPtr = std::shared_ptr<const MeasurePart>;

/// base + sum of values on disjoint closed segments. Integrals are exact.
class PiecewiseConstantDensity final : public MeasurePart {
 public:
  struct Segment {
    double left;
    double right;
    double value;
  };

  explicit PiecewiseConstantDensity(double base, std::vector<Segment> segments = {});
  static PartPtr constant(double value);

  double integrate(const LinearKernel& k) const override;
  double density(double x) const override;

  double base() const { return base_; }
  std::span<const Segment> segments() const { return segments_; }

 private:
  double base_;
  std::vector<Segment> segments_;
};

/// Density given as a callable; integrals use adaptive Simpson.
class FunctionDensity final : public MeasurePart {
 public:
  explicit FunctionDensity(std::function<double(double)> f, quadrature::SimpsonOptions opts = {});

  double integrate(const LinearKernel& k) const override;
  double density(double x) const override;

 private:
  std::function<double(double)> f_;
  quadrature::SimpsonOptions opts_;
};

struct Atom {
  double position;
  double mass;
};

class AtomList final : public MeasurePart {
 public:
  explicit AtomList(std::vector<Atom> atoms);

  double integrate(const LinearKernel& k) const override;
  double point_mass(double x) const override;
  void validate(const StateSpace& space) const override;

  std::span<const Atom> atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// Continuous singular component represented by its distribution function.
/// Integrals against it go through integration by parts, so only CDF values
/// and integrals of CDF increments are needed.
class SingularPart : public MeasurePart {
 public:
  virtual double cdf(double x) const = 0;
  /// Integral over [a, b] of cdf(u) - cdf(a). The generic version refines
  /// the trapezoid rule where the monotone bracket (F(r) - F(l))(r - l) is
  /// widest, so flat stretches and self-similar CDFs are handled safely.
  virtual double increment_integral(double a, double b) const;

  double integrate(const LinearKernel& k) const final;

  static constexpr double kBracketTolerance = 1e-11;
  static constexpr std::size_t kMaxCdfEvaluations = std::size_t{1} << 16;
};

/// Singular part from an arbitrary nondecreasing continuous CDF.
class CdfSingularPart final : public SingularPart {
 public:
  explicit CdfSingularPart(std::function<double(double)> cdf);
  double cdf(double x) const override { return cdf_(x); }

 private:
  std::function<double(double)> cdf_;
};

/// c times another part.
class ScaledPart final : public MeasurePart {
 public:
  ScaledPart(PartPtr base, double factor);

  double integrate(const LinearKernel& k) const override;
  double point_mass(double x) const override;
  double density(double x) const override;
  void validate(const StateSpace& space) const override { base_->validate(space); }

 private:
  PartPtr base_;
  double factor_;
};

}  // namespace emcel
