#pragma once

#include <stdexcept>
#include <string>

namespace gparith {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Stable machine-readable tag, used by the CLI error object.
  virtual const char* code() const noexcept { return "error"; }
};

class InvalidInput : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "invalid_input"; }
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "not_positive_definite"; }
};

class EmptyCurve : public Error {
 public:
  using Error::Error;
  const char* code() const noexcept override { return "empty_curve"; }
};

}  // namespace gparith
