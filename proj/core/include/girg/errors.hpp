#pragma once

#include <stdexcept>
#include <string>

namespace girg {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or input violates a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The request lies exactly on the regime boundary k = 2/(3 - tau), where no
/// asymptotic statement is available.
class BoundaryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The requested limit integral is infinite for these parameters.
class DivergenceError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The computation would exceed a configured capacity (quadratic sampler
/// guard, 64-bit count overflow).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace girg
