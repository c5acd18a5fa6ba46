#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "speedprof/errors.hpp"

namespace speedprof {

using ScalarFn = std::function<double(double)>;

/// Numerical tolerances shared by all modules.
///
/// eps_s and eps_x are absolute, so they should be scaled to the problem:
/// for_problem() applies the default scaling (1e-9 of the path length and
/// of the squared speed limit).
struct Tolerances {
  double eps_s = 1e-9;      ///< arc-length tolerance [m]
  double eps_x = 1e-9;      ///< squared-speed tolerance [m^2/s^2]
  double quad_rel = 1e-10;  ///< relative quadrature tolerance
  int max_sweep_iters = 64;
  int scan_points = 2048;   ///< samples per bracketing/certification scan

  static Tolerances for_problem(double length, double speed_limit);

  /// Throws InvalidLimits unless all fields are in range.
  void validate() const;
};

/// Locates the first entry into positivity of a continuous function.
///
/// Scans [lo, hi] with tol.scan_points uniform samples and refines the
/// first sign change by bisection to width tol.eps_s. Returns lo itself if
/// f(lo) > positive_threshold, and nullopt if no sample is positive (the
/// empty-set convention for the infimum of an open condition set).
///
/// positive_threshold guards conditions whose value is exactly zero at the
/// scan start by construction: roundoff noise there must not count as a
/// crossing. Crossings narrower than the scan spacing can be missed; the
/// sweep diagnostics report the minimum observed switch gap for this reason.
///
/// value_tol, when finite, keeps bisecting past the eps_s width until
/// |f| <= value_tol at the returned point (or the bracket reaches floating
/// resolution). Callers use it where the residual of f at the root maps to
/// a constraint slack that must stay below eps_x.
std::optional<double> find_first_sign_change(
    const ScalarFn& f, double lo, double hi, const Tolerances& tol,
    double positive_threshold = 0.0,
    double value_tol = std::numeric_limits<double>::infinity());

/// Adaptive Gauss-Kronrod (7,15) quadrature of f over [lo, hi] with
/// relative error tol.quad_rel. Throws NonFiniteValue if f evaluates to a
/// non-finite value at a node.
double integrate(const ScalarFn& f, double lo, double hi,
                 const Tolerances& tol);

/// Minimizer of a function with a unique minimum on [lo, hi]:
/// uniform scan followed by golden-section refinement to width tol.eps_s.
/// If the scan minimum sits at an endpoint, that endpoint is returned
/// exactly.
double argmin_scalar(const ScalarFn& f, double lo, double hi,
                     const Tolerances& tol);

}  // namespace speedprof
