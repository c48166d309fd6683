#pragma once

#include <stdexcept>
#include <string>

namespace dbarrier {

/// Root of every numerical failure raised by the library. The CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class BranchPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The root k_{2,0} = 0 of the resonance equation, which is not a resonance.
class ExcludedRootError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class PoleOnRayError : public PoleError {
 public:
  using PoleError::PoleError;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class StabilityError : public Error {
 public:
  using Error::Error;
};

class DerivativeError : public Error {
 public:
  using Error::Error;
};

}  // namespace dbarrier
