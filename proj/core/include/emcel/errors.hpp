#pragma once

#include <stdexcept>
#include <string>

namespace emcel {

/// Input outside the domain of an operation (interval ordering, points
/// outside the state space, non-finite arguments).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not produce a result (failed bracketing,
/// exhausted iteration budget).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent combination of inputs, e.g. a scale-factor strategy that
/// does not fit the speed measure it is applied to.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace emcel
