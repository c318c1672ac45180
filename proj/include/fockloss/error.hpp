#pragma once

#include <stdexcept>
#include <string>

namespace fockloss {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index or parameter lies outside the range an operation supports
/// (photon number above the cutoff, T outside [0, 1] for Kraus operators...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that should represent a state does not (non-Hermitian, wrong
/// trace, eigenvalues below tolerance).
class NonStateError : public Error {
 public:
  using Error::Error;
};

/// Numerical evaluation cannot reach the requested accuracy (divergent
/// integrand, singular parameter, vanishing purity).
class AccuracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace fockloss
