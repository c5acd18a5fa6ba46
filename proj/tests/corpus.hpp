#pragma once

// Shared problem corpus used by the unit and acceptance suites. The same
// problems exist as JSON files under problems/ for the CLI.

#include <cmath>
#include <memory>

#include "speedprof/geometry.hpp"
#include "speedprof/profile.hpp"

namespace corpus {

inline const double kBeta = 3.0 * std::sqrt(5.0);

/// Planar cubic (beta*tau, tau^3) on [-1, 1]; strictly increasing signed
/// curvature.
inline speedprof::ParametricCurve cubic_curve() {
  return speedprof::ParametricCurve(
      speedprof::Polynomial({0.0, kBeta}),
      speedprof::Polynomial({0.0, 0.0, 0.0, 1.0}), -1.0, 1.0);
}

struct CubicSetup {
  speedprof::ArcLengthMap map;
  speedprof::CurvatureModel model;
  speedprof::Tolerances tol;
};

/// Reparametrized cubic, built once and shared (construction does real
/// quadrature work).
inline const CubicSetup& cubic() {
  static const CubicSetup setup = [] {
    speedprof::Tolerances provisional;
    const speedprof::ArcLengthMap probe(cubic_curve(), provisional);
    speedprof::Tolerances tol =
        speedprof::Tolerances::for_problem(probe.length(), 5.0);
    auto [map, model] = reparametrize(cubic_curve(), tol);
    return CubicSetup{std::move(map), std::move(model), tol};
  }();
  return setup;
}

inline speedprof::Limits cubic_limits() { return {1.5, 2.0, 1.0, 5.0}; }

inline speedprof::ProblemSpec cubic_spec(speedprof::BoundaryCondition start,
                                         speedprof::BoundaryCondition end) {
  return {cubic_limits(), start, end, cubic().model.length()};
}

inline speedprof::BoundaryCondition fixed(double v) {
  return {speedprof::BoundaryKind::fixed, v};
}
inline speedprof::BoundaryCondition at_most(double v) {
  return {speedprof::BoundaryKind::at_most, v};
}
inline speedprof::BoundaryCondition free_bc() {
  return {speedprof::BoundaryKind::free, 0.0};
}

/// Affine curvature model kappa(s) = k0 + k1 s on [0, length].
inline speedprof::CurvatureModel affine_model(double k0, double k1,
                                              double length,
                                              const speedprof::Tolerances& tol) {
  return speedprof::CurvatureModel::analytic(
      [k0, k1](double s) { return k0 + k1 * s; },
      [k1](double) { return k1; }, length, tol);
}

struct Problem {
  const char* name;
  speedprof::ProblemSpec spec;
  speedprof::CurvatureModel model;
  speedprof::Tolerances tol;
};

/// The test corpus: the four cubic boundary variants plus the analytic
/// switch-point problem and the near-straight triangle problem.
inline std::vector<Problem> all_problems() {
  std::vector<Problem> out;
  const CubicSetup& c = cubic();
  out.push_back({"cubic_rest", cubic_spec(fixed(0.0), fixed(0.0)), c.model, c.tol});
  out.push_back({"cubic_fast_entry", cubic_spec(fixed(2.5), fixed(0.0)), c.model, c.tol});
  out.push_back({"cubic_free", cubic_spec(free_bc(), free_bc()), c.model, c.tol});
  out.push_back(
      {"cubic_bounded", cubic_spec(fixed(2.5), fixed(1.5)), c.model, c.tol});

  {
    speedprof::Tolerances tol = speedprof::Tolerances::for_problem(5.0, 3.0);
    speedprof::ProblemSpec spec{{0.1, 0.2, 1.0, 3.0}, at_most(2.0), free_bc(),
                                5.0};
    out.push_back(
        {"affine_switch", spec, affine_model(-1.0, 0.1, 5.0, tol), tol});
  }
  {
    speedprof::Tolerances tol = speedprof::Tolerances::for_problem(5.0, 1000.0);
    speedprof::ProblemSpec spec{{1.5, 2.0, 1.0, 1000.0}, fixed(0.0),
                                fixed(0.0), 5.0};
    out.push_back(
        {"triangle", spec, affine_model(-1e-8, 1e-9, 5.0, tol), tol});
  }
  return out;
}

}  // namespace corpus
