#pragma once

#include <stdexcept>
#include <string>

namespace gpe {

// Bad arguments or violated preconditions (grid sizes, negative amplitudes, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Two fields that must share a grid do not.
class GridMismatch : public InvalidArgument {
 public:
  GridMismatch() : InvalidArgument("fields live on different grids") {}
};

// Numerical failure during propagation or relaxation (blow-up, no convergence).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curve fitting failed or its preconditions were not met.
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration parsing or validation failure.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gpe
