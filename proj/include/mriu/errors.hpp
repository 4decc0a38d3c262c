#pragma once

#include <stdexcept>
#include <string>

namespace mriu {

/// Axis index outside 0..n-1.
class AxisError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Shapes of operands do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state or probability vector fails the unit-norm check.
class NormalizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of an operation (p outside [0,1], bad name, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative numerical routine failed (non-convergence, degenerate input).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mriu
