#pragma once

#include <stdexcept>
#include <string>

namespace p33 {

// Operands live in different generator spaces.
class SpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a structural precondition (non-skew F, repeated variable...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quantity that must be nonzero (or a kernel of prescribed dimension)
// degenerated. `quantity()` names what vanished, e.g. "lambda_minus".
class DegenerateError : public std::runtime_error {
 public:
  DegenerateError(std::string quantity, const std::string& what)
      : std::runtime_error(what), quantity_(std::move(quantity)) {}
  const std::string& quantity() const noexcept { return quantity_; }

 private:
  std::string quantity_;
};

// Iterative numerics failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gauge reconciliation could not satisfy a consistency condition.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace p33
