#pragma once

#include <span>
#include <vector>

#include "emcel/measure_parts.hpp"
#include "emcel/state_space.hpp"

namespace emcel {

/// Speed measure m of a diffusion in natural scale: a sum of an absolutely
/// continuous part, finitely many atoms and an optional singular-continuous
/// part, living on a state space. Immutable; safe to share across threads.
class SpeedMeasure {
 public:
  SpeedMeasure(StateSpace space, std::vector<PartPtr> parts);

  /// density part, atoms (may be empty), optional singular part (may be null).
  static SpeedMeasure from_components(StateSpace space, PartPtr density, std::vector<Atom> atoms = {},
                                      PartPtr singular = nullptr);

  const StateSpace& space() const { return space_; }
  std::span<const PartPtr> parts() const { return parts_; }

  /// Integral of the kernel over the open interval (k.lo, k.hi).
  double integrate(const LinearKernel& k) const;
  double point_mass(double x) const;
  double density(double x) const;

  bool is_density_only() const { return density_only_; }

  SpeedMeasure scaled(double factor) const;
  SpeedMeasure with_part(PartPtr part) const;

 private:
  StateSpace space_;
  std::vector<PartPtr> parts_;
  bool density_only_ = true;
};

}  // namespace emcel
