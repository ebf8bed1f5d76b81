#pragma once

#include <stdexcept>
#include <string>

namespace hahn {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes: InputError/CapExceeded -> 2, ResourceLimit -> 3,
// MathBoundary subclasses -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public InputError {
 public:
  using InputError::InputError;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// A hypergeometric denominator vanished against a nonzero numerator.
class DegenerateParameters : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree exactly did not. Always a bug.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

class MathBoundary : public Error {
 public:
  using Error::Error;
};

class GaugeSingular : public MathBoundary {
 public:
  using MathBoundary::MathBoundary;
};

class BoundaryRegime : public MathBoundary {
 public:
  using MathBoundary::MathBoundary;
};

class PoleOnContour : public MathBoundary {
 public:
  using MathBoundary::MathBoundary;
};

}  // namespace hahn
