#pragma once

#include <stdexcept>
#include <string>

namespace knotvol {

// Bad input: malformed specs, empty sequences, points outside an operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InsufficientDataError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Evaluation on a branch cut without saying which side.
class BranchAmbiguityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An evaluation that ran but could not produce a trustworthy number.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace knotvol
