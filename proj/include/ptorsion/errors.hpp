#pragma once

#include <stdexcept>
#include <string>

namespace ptorsion {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation needs more digits than the operands carry.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the operation (disc, residue class, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The caller-supplied action does not satisfy the stability hypotheses.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ptorsion
