#pragma once

#include <stdexcept>
#include <string>

namespace imex {

/// Invalid user-supplied parameter (order out of range, delta outside (0,1], ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficient generation or validation failed.
class InvalidSchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A is not Hermitian negative definite (on the working subspace).
class DefinitenessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InitializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the stepper; carries the index of the step that failed.
class StepError : public std::runtime_error {
 public:
  StepError(long step, const std::string& what) : std::runtime_error(what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class InstabilityError : public StepError {
 public:
  using StepError::StepError;
};

class SolverError : public StepError {
 public:
  using StepError::StepError;
};

/// Nonlinear coefficient evaluated outside its domain (e.g. rho <= 0).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imex
