#pragma once

#include <stdexcept>
#include <string>

namespace satd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller (e.g. a non-Hermitian
/// generator handed to the matrix exponential).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Input value outside its domain: non-finite entries, time outside [0, T],
/// invalid physical parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Omega(t) = 0 at a sample point; the adiabatic angles are undefined.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Omega + g_z (plus the phase-rate term) is not positive, so the dressed-state
/// angle leaves its principal branch and the protocol is invalid.
class FrameBreakdownError : public Error {
 public:
  using Error::Error;
};

/// An iterative integrator or quadrature did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration; the message names the offending key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace satd
