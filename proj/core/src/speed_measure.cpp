#include "emcel/speed_measure.hpp"

#include <memory>
#include <utility>

#include "emcel/errors.hpp"

namespace emcel {

namespace {

bool is_density_part(const MeasurePart& p) {
  if (dynamic_cast<const PiecewiseConstantDensity*>(&p) != nullptr) return true;
  if (dynamic_cast<const FunctionDensity*>(&p) != nullptr) return true;
  return false;
}

}  // namespace

SpeedMeasure::SpeedMeasure(StateSpace space, std::vector<PartPtr> parts)
    : space_(space), parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("speed measure needs at least one component");
  for (const auto& p : parts_) {
    if (!p) throw DomainError("speed measure component is null");
    p->validate(space_);
    if (!is_density_part(*p)) density_only_ = false;
  }
}

SpeedMeasure SpeedMeasure::from_components(StateSpace space, PartPtr density, std::vector<Atom> atoms,
                                           PartPtr singular) {
  std::vector<PartPtr> parts;
  if (density) parts.push_back(std::move(density));
  if (!atoms.empty()) parts.push_back(std::make_shared<AtomList>(std::move(atoms)));
  if (singular) parts.push_back(std::move(singular));
  return SpeedMeasure(space, std::move(parts));
}

double SpeedMeasure::integrate(const LinearKernel& k) const {
  double total = 0.0;
  for (const auto& p : parts_) total += p->integrate(k);
  return total;
}

double SpeedMeasure::point_mass(double x) const {
  double total = 0.0;
  for (const auto& p : parts_) total += p->point_mass(x);
  return total;
}

double SpeedMeasure::density(double x) const {
  double total = 0.0;
  for (const auto& p : parts_) total += p->density(x);
  return total;
}

SpeedMeasure SpeedMeasure::scaled(double factor) const {
  std::vector<PartPtr> parts;
  parts.reserve(parts_.size());
  for (const auto& p : parts_) parts.push_back(std::make_shared<ScaledPart>(p, factor));
  SpeedMeasure out(space_, std::move(parts));
  out.density_only_ = density_only_;
  return out;
}

SpeedMeasure SpeedMeasure::with_part(PartPtr part) const {
  auto parts = parts_;
  parts.push_back(std::move(part));
  return SpeedMeasure(space_, std::move(parts));
}

}  // namespace emcel
