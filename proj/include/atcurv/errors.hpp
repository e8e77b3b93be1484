#pragma once

#include <stdexcept>
#include <string>

namespace atcurv {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Two vertices lie in different connected components.
class Unreachable : public Error {
 public:
  using Error::Error;
};

// A local computation needs vertices beyond a truncation boundary.
class LocalityError : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class NotBlockStructured : public Error {
 public:
  using Error::Error;
};

// No closed-form curvature formula covers the requested parameters.
class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

// Sampled curvature contradicts the concave piecewise-linear structure.
class StructureViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace atcurv
