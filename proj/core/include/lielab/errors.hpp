#pragma once

#include <stdexcept>
#include <string>

namespace lielab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Type label not among the supported simple types.
class UnsupportedTypeError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Matrix logarithm requested outside the principal-branch region.
class LogRadiusError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A safety bound on an enumeration was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace lielab
