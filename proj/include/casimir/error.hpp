#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Caller broke an operation's precondition (a <= 0, xi <= 0, z < x, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A perturbative formula was asked to run outside its validity bounds.
class ValidityError : public std::domain_error {
 public:
  ValidityError(std::string bound, const std::string& what)
      : std::domain_error(what), bound_(std::move(bound)) {}
  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string bound_;
};

/// Adaptive quadrature or series summation did not reach the requested tolerance.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double partial_value, double error_estimate)
      : std::runtime_error(what), partial_(partial_value), error_(error_estimate) {}
  double partial_value() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double partial_;
  double error_;
};

/// Malformed permittivity table input; line is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace casimir
