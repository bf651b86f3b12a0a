#pragma once

#include <stdexcept>
#include <string>

namespace wavelab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Hypergeometric parameter that makes the series undefined (c = 0, -1, ...).
class InvalidParam : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series did not reach the requested tolerance within its term budget.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its refinement depth.
class QuadFailure : public Error {
 public:
  using Error::Error;
};

/// The damping/mass discriminant lies outside (0, 1].
class DeltaOutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Point outside the closed characteristic cone of the kernel.
class ConeViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

class StabilityFailure : public Error {
 public:
  using Error::Error;
};

class GridTooSmall : public Error {
 public:
  using Error::Error;
};

class WindowTooShort : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file or value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wavelab
