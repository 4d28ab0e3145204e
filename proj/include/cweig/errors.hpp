#pragma once

#include <stdexcept>
#include <string>

namespace cweig {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameters violate the hypotheses under which brackets are certified.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Round-off in a series exceeds the accuracy budget.
class AccuracyError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// No sign change in an interval that should contain a root.
class BracketError : public ConvergenceError {
 public:
  BracketError(const std::string& what, double lo, double hi)
      : ConvergenceError(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

// Evaluation point sits on a pole of a logarithmic derivative.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace cweig
