#pragma once

#include <stdexcept>
#include <string>

namespace fairprice {

// Argument outside the domain where a formula is defined (e.g. a perceived
// markup at or beyond the point where the fairness factor hits zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid parameter combination detected at construction time.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for every failure of an iterative or linear-algebra routine.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleScenario : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InadmissibleSteadyState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularMatrix : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoSolution : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class Indeterminate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BoundaryEigenvalue : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class VerificationFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, double worst_residual, int worst_period)
      : NumericalError(what), worst_residual_(worst_residual), worst_period_(worst_period) {}

  double worst_residual() const noexcept { return worst_residual_; }
  int worst_period() const noexcept { return worst_period_; }

 private:
  double worst_residual_;
  int worst_period_;
};

class NoRoot : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fairprice
