#pragma once

#include <stdexcept>
#include <string>

namespace stabma {

/// Raised when an argument falls outside the domain of an operation.
/// The command-line front end maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A bound formula was requested for a kernel that does not carry the
/// metadata it needs (for example the generic increment bound on a kernel
/// defined through its Fourier transform).
class InapplicableBound : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An integral of |g|^alpha diverges for the requested exponent.
class NonIntegrable : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace stabma
