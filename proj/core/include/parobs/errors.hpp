#pragma once

#include <stdexcept>
#include <string>

namespace parobs {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A symbol whose leading part is not positive on the sphere.
struct NotElliptic : Error {
  using Error::Error;
};

/// An operation received a field in the wrong representation
/// (physical samples where spectral coefficients were expected, or vice versa).
struct TagMismatch : Error {
  using Error::Error;
};

/// Two fields (or a field and an operator) live on different grids.
struct GridMismatch : Error {
  using Error::Error;
};

struct NegativeTime : Error {
  using Error::Error;
};

/// An envelope or slope fit could not be carried out on the given samples.
struct FitFailed : Error {
  using Error::Error;
};

/// The frequency lattice is too coarse to resolve a requested cutoff band.
struct UnderResolved : Error {
  using Error::Error;
};

/// A dissipation measurement was requested at or below the activation
/// threshold of the general-symbol decay estimate.
struct LambdaBelowThreshold : Error {
  using Error::Error;
};

/// A thickness reference box does not fit inside the periodic domain.
struct BoxExceedsDomain : Error {
  using Error::Error;
};

struct DegenerateParams : Error {
  using Error::Error;
};

/// All probes vanish on the measurement set, so no ratio can be formed.
struct ZeroRestriction : Error {
  using Error::Error;
};

struct ZeroDenominator : Error {
  using Error::Error;
};

/// Constant assembly requires gamma1 < gamma2.
struct ExponentOrder : Error {
  using Error::Error;
};

/// A control is being evaluated outside its knot span, or its knot
/// vector is not strictly increasing.
struct KnotMismatch : Error {
  using Error::Error;
};

/// Iterative solver hit its iteration cap; carries the last residual.
struct NoConvergence : Error {
  NoConvergence(const std::string& what, std::size_t iterations, double residual)
      : Error(what), iterations(iterations), residual(residual) {}
  std::size_t iterations;
  double residual;
};

/// Malformed configuration file or command line.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace parobs
