#pragma once

#include <stdexcept>
#include <string>

namespace speedprof {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An integrand or curve evaluation produced a NaN/inf.
struct NonFiniteValue : Error {
  using Error::Error;
};

/// The curve's tangent vanished (not a regular curve).
struct DegenerateCurve : Error {
  using Error::Error;
};

/// Signed curvature failed the strict-monotonicity certification.
struct MonotonicityViolation : Error {
  MonotonicityViolation(const std::string& what, double s_lo, double s_hi)
      : Error(what), s_lo(s_lo), s_hi(s_hi) {}
  double s_lo;  ///< offending sample pair
  double s_hi;
};

/// The sweep while-loop exceeded its iteration cap.
struct SweepNonterminating : Error {
  using Error::Error;
};

/// A limit that must be strictly positive is not.
struct InvalidLimits : Error {
  using Error::Error;
};

/// A fixed boundary speed cannot be met by any feasible profile.
struct EqualityInfeasible : Error {
  using Error::Error;
};

/// Evaluation outside the profile/curve domain.
struct OutOfDomain : Error {
  using Error::Error;
};

/// The squared-speed profile vanishes on a set of positive measure.
struct InfiniteTime : Error {
  using Error::Error;
};

/// Malformed problem file or profile CSV.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace speedprof
