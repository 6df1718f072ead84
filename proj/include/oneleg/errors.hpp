#pragma once

#include <stdexcept>
#include <string>

namespace oneleg {

// Bad user input: scheme parameters, grid sizes, config files.
class invalid_parameter : public std::invalid_argument {
 public:
  explicit invalid_parameter(const std::string& msg) : std::invalid_argument(msg) {}
};

// Two grid states that were expected to live on the same grid do not.
class grid_mismatch : public invalid_parameter {
 public:
  explicit grid_mismatch(const std::string& msg) : invalid_parameter(msg) {}
};

// A state that must be strictly positive has a nonpositive node.
// Thrown by residual evaluations so the Newton damping can back off.
class positivity_error : public std::runtime_error {
 public:
  explicit positivity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Newton ran out of iterations; carries the last residual norm seen.
class nonconvergence_error : public std::runtime_error {
 public:
  nonconvergence_error(const std::string& msg, double last_residual)
      : std::runtime_error(msg), last_residual_norm(last_residual) {}
  double last_residual_norm;
};

// Step halving could not restore positivity / a nonincreasing residual.
class positivity_trap_error : public std::runtime_error {
 public:
  explicit positivity_trap_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Singular or numerically unusable Jacobian in the linear solve.
class jacobian_error : public std::runtime_error {
 public:
  explicit jacobian_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A study-level invariant failed (empty fit window, nonpositive errors, ...).
class study_error : public std::runtime_error {
 public:
  explicit study_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace oneleg
