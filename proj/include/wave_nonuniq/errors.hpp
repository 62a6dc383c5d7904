#pragma once

#include <stdexcept>
#include <string>

namespace wave_nonuniq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: zero polynomials, negative eigenvalues, bad grids.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An operation precondition on a mathematically valid object failed
/// (e.g. inverse Laplace of an improper rational function).
class ContractError : public Error {
 public:
  using Error::Error;
};

class UnsupportedMultiplicity : public Error {
 public:
  using Error::Error;
};

class DegenerateVelocities : public Error {
 public:
  using Error::Error;
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class TrivialSource : public Error {
 public:
  using Error::Error;
};

class UnsupportedRepresentation : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised before time stepping when the explicit scheme would be unstable.
class StabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace wave_nonuniq
