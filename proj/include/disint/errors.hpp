#pragma once

#include <stdexcept>
#include <string>

namespace disint {

// Root of every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Operation precondition that depends on a derived quantity (e.g. t > E S_n).
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Regime labelling convention violated (upper regime must carry more mass
// on the up state).
class ConventionError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Autoregressive coefficient outside the stationary range.
class StationarityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed or unsupported configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Reducible transition matrix: no unique stationary distribution.
class NonErgodicError : public Error {
 public:
  using Error::Error;
};

// Trajectory and measure sequence do not belong together.
class PairingError : public Error {
 public:
  using Error::Error;
};

// Conditioning event never occurred in any trial.
class DegenerateConditioningError : public Error {
 public:
  using Error::Error;
};

}  // namespace disint
