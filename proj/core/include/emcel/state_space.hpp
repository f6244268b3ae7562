#pragma once

#include <string_view>

namespace emcel {

enum class BoundaryBehavior { Inaccessible, Absorbing, Reflecting };

std::string_view to_string(BoundaryBehavior b);
BoundaryBehavior boundary_behavior_from_string(std::string_view s);

/// State interval I with endpoints l < r (either may be infinite) and the
/// behavior of the process at each endpoint. A finite endpoint belongs to I
/// exactly when it is accessible (absorbing or reflecting).
class StateSpace {
 public:
  StateSpace(double left, double right,
             BoundaryBehavior left_behavior = BoundaryBehavior::Inaccessible,
             BoundaryBehavior right_behavior = BoundaryBehavior::Inaccessible);

  static StateSpace real_line();

  double left() const { return left_; }
  double right() const { return right_; }
  BoundaryBehavior left_behavior() const { return left_behavior_; }
  BoundaryBehavior right_behavior() const { return right_behavior_; }

  bool left_finite() const;
  bool right_finite() const;
  bool has_reflecting_boundary() const;

  bool in_interior(double x) const;  // x in (l, r)
  bool in_closure(double x) const;   // x in [l, r], finite x only
  bool contains(double x) const;     // x in I

  /// True when x is a finite endpoint that the process cannot reach.
  bool is_inaccessible_endpoint(double x) const;

  /// min(y - l, r - y); +inf on the real line.
  double distance_to_boundary(double y) const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  double left_;
  double right_;
  BoundaryBehavior left_behavior_;
  BoundaryBehavior right_behavior_;
};

}  // namespace emcel
