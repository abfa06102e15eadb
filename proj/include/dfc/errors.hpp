#pragma once

#include <stdexcept>
#include <string>

namespace dfc {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A gamma-function argument landed on a pole (a non-positive integer).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not representable in the active numeric mode,
/// e.g. a non-integer power of a rational in exact mode.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Two grid functions that must share a domain (same base, same length) do not.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation needs more samples than the grid function holds.
class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// Two diamond parameter sets that must share gamma do not.
class GammaMismatch : public Error {
 public:
  using Error::Error;
};

/// An index lies outside the grid function it refers to.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A scalar or file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A CSV stream violates the expected structure (header, t-column, row shape).
class CsvError : public Error {
 public:
  using Error::Error;
};

/// A float-mode computation produced or received a non-finite value.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated (non-positive order,
/// gamma outside [0,1], empty sample vector, zero denominator, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace dfc
