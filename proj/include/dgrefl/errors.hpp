#pragma once

#include <stdexcept>
#include <string>

namespace dgrefl {

/// Scalar outside the configured field, e.g. a denominator divisible by p.
class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// An operation was called on input outside its domain.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object failed one of its own runtime self-checks (d^2 = 0, ...).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAComplexError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace dgrefl
