#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "emcel/errors.hpp"
#include "emcel/state_space.hpp"

using emcel::BoundaryBehavior;
using emcel::StateSpace;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST(StateSpace, RealLineHasNoFiniteEnds) {
  const StateSpace s = StateSpace::real_line();
  EXPECT_FALSE(s.left_finite());
  EXPECT_FALSE(s.right_finite());
  EXPECT_TRUE(s.in_interior(0.0));
  EXPECT_TRUE(std::isinf(s.distance_to_boundary(3.0)));
  EXPECT_FALSE(s.has_reflecting_boundary());
}

TEST(StateSpace, AccessibleEndpointsBelongToTheSpace) {
  const StateSpace absorbing(0.0, 1.0, BoundaryBehavior::Absorbing, BoundaryBehavior::Inaccessible);
  EXPECT_TRUE(absorbing.contains(0.0));
  EXPECT_FALSE(absorbing.contains(1.0));
  EXPECT_TRUE(absorbing.in_closure(1.0));
  EXPECT_TRUE(absorbing.is_inaccessible_endpoint(1.0));
  EXPECT_FALSE(absorbing.is_inaccessible_endpoint(0.0));
  EXPECT_DOUBLE_EQ(absorbing.distance_to_boundary(0.25), 0.25);
  EXPECT_DOUBLE_EQ(absorbing.distance_to_boundary(0.9), 0.1 + 0.0 * 0.9);
}

TEST(StateSpace, RejectsInvalidIntervals) {
  EXPECT_THROW(StateSpace(1.0, 1.0), emcel::DomainError);
  EXPECT_THROW(StateSpace(2.0, 1.0), emcel::DomainError);
  EXPECT_THROW(StateSpace(0.0, kInf, BoundaryBehavior::Inaccessible, BoundaryBehavior::Reflecting),
               emcel::DomainError);
  EXPECT_THROW(StateSpace(-kInf, 0.0, BoundaryBehavior::Absorbing, BoundaryBehavior::Absorbing), emcel::DomainError);
}

TEST(StateSpace, BehaviorNamesRoundTrip) {
  for (auto b : {BoundaryBehavior::Inaccessible, BoundaryBehavior::Absorbing, BoundaryBehavior::Reflecting})
    EXPECT_EQ(emcel::boundary_behavior_from_string(emcel::to_string(b)), b);
  EXPECT_THROW(emcel::boundary_behavior_from_string("sticky"), emcel::DomainError);
}
