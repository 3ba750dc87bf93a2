#pragma once

#include <stdexcept>
#include <string>

namespace infbern {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Erosion radius reaches or exceeds the inradius.
class EmptyInterior : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed or non-convex domain description.
class InvalidDomain : public Error {
 public:
  using Error::Error;
};

/// A parallel-set profile violates a convex-geometry invariant.
class GeometryInconsistency : public Error {
 public:
  using Error::Error;
};

/// The sample grid is too coarse to bracket a root.
class ProfileResolutionError : public Error {
 public:
  using Error::Error;
};

class NoRootError : public Error {
 public:
  using Error::Error;
};

class NotApplicable : public Error {
 public:
  using Error::Error;
};

class SolverDivergence : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// The operation is not implemented for this kind of domain.
class UnsupportedDomain : public Error {
 public:
  using Error::Error;
};

/// A hypothesis the operation relies on (such as a weight threshold) does not hold.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace infbern
