#pragma once

#include <stdexcept>

namespace silico {

/// Input outside an operation's domain: invalid parameters or a violated
/// precondition. Callers can fix these by changing the input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver its contract: term cap reached
/// before the requested tolerance, step-size underflow, failed cross-check.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace silico
