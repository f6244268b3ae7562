#include "emcel/measure_parts.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

#include "emcel/errors.hpp"

namespace emcel {

double LinearKernel::at(double u) const {
  if (is_constant()) return k_lo;
  const double t = (u - lo) / (hi - lo);
  return k_lo * (1.0 - t) + k_hi * t;
}

double LinearKernel::integral(double a, double b) const {
  if (!(b > a)) return 0.0;
  if (is_constant()) return k_lo == 0.0 ? 0.0 : k_lo * (b - a);
  return 0.5 * (b - a) * (at(a) + at(b));
}

// ---------------------------------------------------------------------------

PiecewiseConstantDensity::PiecewiseConstantDensity(double base, std::vector<Segment> segments)
    : base_(base), segments_(std::move(segments)) {
  if (!(base >= 0.0) || !std::isfinite(base)) throw DomainError("density base must be finite and >= 0");
  std::sort(segments_.begin(), segments_.end(),
            [](const Segment& a, const Segment& b) { return a.left < b.left; });
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!std::isfinite(s.left) || !std::isfinite(s.right) || !(s.left < s.right))
      throw DomainError("density segment must be a finite interval with left < right");
    if (!(s.value >= 0.0) || !std::isfinite(s.value))
      throw DomainError("density segment value must be finite and >= 0");
    if (i > 0 && segments_[i - 1].right > s.left) throw DomainError("density segments overlap");
  }
}

PartPtr PiecewiseConstantDensity::constant(double value) {
  return std::make_shared<PiecewiseConstantDensity>(value);
}

double PiecewiseConstantDensity::integrate(const LinearKernel& k) const {
  double total = base_ == 0.0 ? 0.0 : base_ * k.integral(k.lo, k.hi);
  auto it = std::upper_bound(segments_.begin(), segments_.end(), k.lo,
                             [](double x, const Segment& s) { return x < s.right; });
  for (; it != segments_.end() && it->left < k.hi; ++it) {
    const double a = std::max(it->left, k.lo);
    const double b = std::min(it->right, k.hi);
    total += it->value * k.integral(a, b);
  }
  return total;
}

double PiecewiseConstantDensity::density(double x) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                             [](double v, const Segment& s) { return v < s.right; });
  if (it != segments_.end() && it->left <= x) return base_ + it->value;
  return base_;
}

// ---------------------------------------------------------------------------

FunctionDensity::FunctionDensity(std::function<double(double)> f, quadrature::SimpsonOptions opts)
    : f_(std::move(f)), opts_(opts) {
  if (!f_) throw DomainError("density function is empty");
}

double FunctionDensity::integrate(const LinearKernel& k) const {
  if (!(k.hi > k.lo)) return 0.0;
  if (!std::isfinite(k.lo) || !std::isfinite(k.hi))
    throw DomainError("function density cannot be integrated over an unbounded interval");
  auto integrand = [&](double u) {
    const double v = f_(u);
    if (v < 0.0) throw DomainError("density evaluated negative at " + std::to_string(u));
    const double w = k.at(u);
    return w == 0.0 ? 0.0 : w * v;
  };
  return quadrature::adaptive_simpson(integrand, k.lo, k.hi, opts_).value;
}

double FunctionDensity::density(double x) const { return f_(x); }

// ---------------------------------------------------------------------------

AtomList::AtomList(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i].position)) throw DomainError("atom position must be finite");
    if (!(atoms_[i].mass > 0.0) || !std::isfinite(atoms_[i].mass))
      throw DomainError("atom mass must be finite and positive");
    if (i > 0 && !(atoms_[i - 1].position < atoms_[i].position))
      throw DomainError("atom positions must be strictly increasing");
  }
}

double AtomList::integrate(const LinearKernel& k) const {
  auto first = std::upper_bound(atoms_.begin(), atoms_.end(), k.lo,
                                [](double x, const Atom& a) { return x < a.position; });
  double total = 0.0;
  for (auto it = first; it != atoms_.end() && it->position < k.hi; ++it)
    total += it->mass * k.at(it->position);
  return total;
}

double AtomList::point_mass(double x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.position < v; });
  return (it != atoms_.end() && it->position == x) ? it->mass : 0.0;
}

void AtomList::validate(const StateSpace& space) const {
  for (const auto& a : atoms_)
    if (!space.contains(a.position))
      throw DomainError("atom at " + std::to_string(a.position) + " lies outside the state space");
}

// ---------------------------------------------------------------------------

double SingularPart::increment_integral(double a, double b) const {
  if (!(b > a)) return 0.0;
  struct Piece {
    double l, r, fl, fr;
    double bracket() const { return (fr - fl) * (r - l); }
    bool operator<(const Piece& o) const { return bracket() < o.bracket(); }
  };
  const double fa = cdf(a);
  std::priority_queue<Piece> open;
  open.push({a, b, 0.0, cdf(b) - fa});
  double width = open.top().bracket();
  std::size_t evaluations = 2;
  while (0.5 * width > kBracketTolerance && evaluations < kMaxCdfEvaluations && open.top().bracket() > 0.0) {
    const Piece p = open.top();
    open.pop();
    const double m = 0.5 * (p.l + p.r);
    const double fm = cdf(m) - fa;
    ++evaluations;
    const Piece left{p.l, m, p.fl, fm};
    const Piece right{m, p.r, fm, p.fr};
    width += left.bracket() + right.bracket() - p.bracket();
    open.push(left);
    open.push(right);
  }
  double total = 0.0;
  for (; !open.empty(); open.pop()) {
    const Piece& p = open.top();
    total += 0.5 * (p.fl + p.fr) * (p.r - p.l);
  }
  return total;
}

double SingularPart::integrate(const LinearKernel& k) const {
  if (!(k.hi > k.lo)) return 0.0;
  const double f_lo = cdf(k.lo);
  const double f_hi = cdf(k.hi);
  if (f_hi < f_lo) throw DomainError("singular CDF is decreasing");
  if (k.is_constant()) return k.k_lo == 0.0 ? 0.0 : k.k_lo * (f_hi - f_lo);
  return k.k_hi * (f_hi - f_lo) - k.slope() * increment_integral(k.lo, k.hi);
}

CdfSingularPart::CdfSingularPart(std::function<double(double)> cdf) : cdf_(std::move(cdf)) {
  if (!cdf_) throw DomainError("singular CDF is empty");
}

// ---------------------------------------------------------------------------

ScaledPart::ScaledPart(PartPtr base, double factor) : base_(std::move(base)), factor_(factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("scale factor must be positive");
}

double ScaledPart::integrate(const LinearKernel& k) const { return factor_ * base_->integrate(k); }
double ScaledPart::point_mass(double x) const { return factor_ * base_->point_mass(x); }
double ScaledPart::density(double x) const { return factor_ * base_->density(x); }

}  // namespace emcel
