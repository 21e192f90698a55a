#pragma once

#include <stdexcept>
#include <string>

namespace csm {

/// Invalid input to a library function (bad quantum numbers, bad grid, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (non-convergence, overflow).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Morse exponent left the representable range.
class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Eigenvalue matching across rotation angles or grid points was ambiguous.
class ClassificationError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace csm
