#pragma once

#include <stdexcept>
#include <string>

namespace primeham {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class NonConvergence : public Error {
public:
  using Error::Error;
};

/// An integrand or propagated quantity produced NaN or infinity.
class NonFinite : public Error {
public:
  using Error::Error;
};

/// Root bracket without a sign change.
class NoSignChange : public Error {
public:
  using Error::Error;
};

/// A propagated solution that was expected to be nodeless changed sign.
class NodeDetected : public Error {
public:
  using Error::Error;
};

/// Tabulated x(E) failed to increase strictly.
class NonMonotone : public Error {
public:
  NonMonotone(const std::string& what, double energy)
      : Error(what), energy_(energy) {}
  /// Energy at which monotonicity was first lost.
  double energy() const noexcept { return energy_; }

private:
  double energy_;
};

class SymmetryViolation : public Error {
public:
  using Error::Error;
};

class GridTooCoarse : public Error {
public:
  using Error::Error;
};

class GridTooShort : public Error {
public:
  using Error::Error;
};

/// Energy at or above the boundary potential, where no bound state can live.
class NotBound : public Error {
public:
  using Error::Error;
};

class NoSuchLevel : public Error {
public:
  using Error::Error;
};

class InvalidPlan : public Error {
public:
  using Error::Error;
};

}  // namespace primeham
