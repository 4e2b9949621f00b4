#pragma once

#include <stdexcept>
#include <string>

namespace chscatter {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A data invariant does not hold (non-finite samples, m + 1 <= 0, missing decay, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input: unparsable CSV rows, bad flags or config values.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Grid too small for a stencil, or two profiles that should share a grid do not.
class GridError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

/// A scalar argument lies outside the domain of an operation.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double value) : Error(what), value_(value) {}
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// A target lies outside the range [lo, hi] of a sampled map.
class RangeError : public Error {
 public:
  RangeError(const std::string& what, double lo, double hi, double target)
      : Error(what), lo_(lo), hi_(hi), target_(target) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double target() const noexcept { return target_; }

 private:
  double lo_, hi_, target_;
};

/// A marching solver produced a non-finite state, or an iteration failed to converge.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace chscatter
