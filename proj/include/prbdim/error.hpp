#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prbdim {

// Base for every error raised by the library. The CLI maps each subclass to
// its own exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Floating-point overflow that would otherwise surface as an infinity.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Numerical integration did not reach the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_estimate)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

// Invalid configuration or query (scenario values, targets, splits).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A throughput split that puts outdoor traffic on a road-free plane.
class InfeasibleSplitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Target congestion not reached below the PRB search ceiling.
class CeilingError : public Error {
 public:
  CeilingError(const std::string& what, std::size_t ceiling, double achieved)
      : Error(what), ceiling_(ceiling), achieved_(achieved) {}

  std::size_t ceiling() const noexcept { return ceiling_; }
  double achieved() const noexcept { return achieved_; }

 private:
  std::size_t ceiling_;
  double achieved_;
};

// Malformed scenario text; carries the offending 1-based line (0 if the
// problem is not tied to a line, e.g. a missing key).
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : ValidationError(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace prbdim
