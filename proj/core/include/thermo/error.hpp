#pragma once

#include <stdexcept>

namespace thermo {

/// Base class for every mathematical precondition failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad dimensions, symbols out of range, non-finite tables.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operation needed coordinates beyond the capacity of a point prefix.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A cylinder around the queried point has zero measure.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// The transition graph (or stochastic matrix) is not irreducible, or not primitive.
class ReducibleError : public Error {
 public:
  using Error::Error;
};

/// The measure failed a hypothesis (non-atomicity, Gibbs diagnostics, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace thermo
