#include "emcel/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "emcel/errors.hpp"

namespace emcel {

std::string_view to_string(BoundaryBehavior b) {
  switch (b) {
    case BoundaryBehavior::Inaccessible:
      return "inaccessible";
    case BoundaryBehavior::Absorbing:
      return "absorbing";
    case BoundaryBehavior::Reflecting:
      return "reflecting";
  }
  return "unknown";
}

BoundaryBehavior boundary_behavior_from_string(std::string_view s) {
  if (s == "inaccessible") return BoundaryBehavior::Inaccessible;
  if (s == "absorbing") return BoundaryBehavior::Absorbing;
  if (s == "reflecting") return BoundaryBehavior::Reflecting;
  throw DomainError("unknown boundary behavior '" + std::string(s) + "'");
}

StateSpace::StateSpace(double left, double right, BoundaryBehavior left_behavior,
                       BoundaryBehavior right_behavior)
    : left_(left), right_(right), left_behavior_(left_behavior), right_behavior_(right_behavior) {
  if (std::isnan(left) || std::isnan(right)) throw DomainError("state space endpoint is NaN");
  if (!(left < right)) throw DomainError("state space requires left < right");
  if (std::isinf(left) && left > 0) throw DomainError("left endpoint cannot be +inf");
  if (std::isinf(right) && right < 0) throw DomainError("right endpoint cannot be -inf");
  if (std::isinf(left) && left_behavior != BoundaryBehavior::Inaccessible)
    throw DomainError("infinite left endpoint must be inaccessible");
  if (std::isinf(right) && right_behavior != BoundaryBehavior::Inaccessible)
    throw DomainError("infinite right endpoint must be inaccessible");
}

StateSpace StateSpace::real_line() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return StateSpace(-inf, inf);
}

bool StateSpace::left_finite() const { return std::isfinite(left_); }
bool StateSpace::right_finite() const { return std::isfinite(right_); }

bool StateSpace::has_reflecting_boundary() const {
  return left_behavior_ == BoundaryBehavior::Reflecting ||
         right_behavior_ == BoundaryBehavior::Reflecting;
}

bool StateSpace::in_interior(double x) const { return x > left_ && x < right_; }

bool StateSpace::in_closure(double x) const {
  return std::isfinite(x) && x >= left_ && x <= right_;
}

bool StateSpace::contains(double x) const {
  if (in_interior(x)) return true;
  if (x == left_ && left_finite()) return left_behavior_ != BoundaryBehavior::Inaccessible;
  if (x == right_ && right_finite()) return right_behavior_ != BoundaryBehavior::Inaccessible;
  return false;
}

bool StateSpace::is_inaccessible_endpoint(double x) const {
  if (!std::isfinite(x)) return false;
  return (x == left_ && left_behavior_ == BoundaryBehavior::Inaccessible) ||
         (x == right_ && right_behavior_ == BoundaryBehavior::Inaccessible);
}

double StateSpace::distance_to_boundary(double y) const { return std::min(y - left_, right_ - y); }

}  // namespace emcel
