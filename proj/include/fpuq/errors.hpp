#pragma once

#include <stdexcept>
#include <string>

namespace fpuq {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rounded magnitude left the normalized range of the target format.
struct OverflowOrUnderflow : Error {
  using Error::Error;
};

/// NaN or infinite input where a finite value is required.
struct NonFinite : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

/// realized_delta called with a zero reference and a nonzero computed value.
struct ZeroReference : Error {
  using Error::Error;
};

/// Deterministic bound requested outside its region of validity (n*u >= 1).
struct BoundInvalid : Error {
  using Error::Error;
};

struct InfeasibleConfidence : Error {
  using Error::Error;
};

struct ScanCapExceeded : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct ZeroPivot : Error {
  ZeroPivot(const std::string& what, std::size_t index) : Error(what), index(index) {}
  std::size_t index;
};

struct SingularReference : Error {
  using Error::Error;
};

struct EmptySample : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fpuq
