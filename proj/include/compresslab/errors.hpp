#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compresslab {

// Base of every error raised by the library. The CLI maps the subclasses
// onto process exit codes (see exit_code()).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (slit, Re z > 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computation produced NaN or infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Forward orbit left the escape disk.
class EscapeError : public Error {
 public:
  EscapeError(std::size_t step, const std::string& what)
      : Error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Quadrature grid cannot resolve the oscillation of the integrand.
class AliasingError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A truncated series or quadrature did not converge to the requested tolerance.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Problem instance exceeds a hard size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace compresslab
