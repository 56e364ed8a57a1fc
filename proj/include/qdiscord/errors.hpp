#pragma once

#include <stdexcept>
#include <string>

namespace qdiscord {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range index, bad enum text, malformed configuration.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input that violates its documented precondition
/// (for example a non-Hermitian matrix handed to the Hermitian eigensolver).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the density-operator checks (Hermitian, unit trace, PSD).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Relative entropy is infinite: supp(rho) is not contained in supp(sigma).
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// The Runge-Kutta integrator produced a non-finite entry.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// A requested (state, channel, quantity) combination has no implementation.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Simplex refinement hit its iteration cap. Carries the best value seen so
/// callers can still report it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_value)
      : Error(what), best_value_(best_value) {}

  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

}  // namespace qdiscord
