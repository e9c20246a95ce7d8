#pragma once

#include <stdexcept>
#include <string>

namespace smp {

/// Shapes or counts that do not match what an operation requires.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside an operation's mathematical domain (e.g. p in 2N where
/// a non-even exponent is required, |b| >= 1 for a power series).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A mathematical hypothesis of a construction does not hold for the input.
class HypothesisError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numerical procedure could not reach the accuracy it needed. This is a
/// statement about the desk computation, never about the mathematics.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace smp
