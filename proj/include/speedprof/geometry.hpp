#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

#include "speedprof/numerics.hpp"

namespace speedprof {

/// Dense polynomial with ascending coefficients, evaluated by Horner.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double t) const;
  Polynomial derivative() const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

/// Planar polynomial curve r(tau) = (x(tau), y(tau)) on [tau_lo, tau_hi].
/// Derivative polynomials are precomputed once.
class ParametricCurve {
 public:
  ParametricCurve(Polynomial x, Polynomial y, double tau_lo, double tau_hi);

  const Polynomial& x() const { return x_; }
  const Polynomial& y() const { return y_; }
  double tau_lo() const { return tau_lo_; }
  double tau_hi() const { return tau_hi_; }

  Eigen::Vector2d point(double tau) const { return {x_(tau), y_(tau)}; }
  Eigen::Vector2d d1(double tau) const { return {dx_(tau), dy_(tau)}; }
  Eigen::Vector2d d2(double tau) const { return {ddx_(tau), ddy_(tau)}; }
  /// |r'(tau)|; throws DegenerateCurve below machine-scale threshold.
  double speed(double tau) const;

 private:
  Polynomial x_, y_, dx_, dy_, ddx_, ddy_;
  double tau_lo_, tau_hi_;
};

/// Signed curvature from first/second parameter derivatives of a regular
/// planar curve: (x'y'' - y'x'') / (x'^2 + y'^2)^(3/2). Reduces to the
/// unit-speed determinant convention when |d1| = 1.
double curvature_from_derivatives(const Eigen::Vector2d& d1,
                                  const Eigen::Vector2d& d2);

/// Signed curvature of a polynomial curve at tau.
double curvature_of_parametric(const ParametricCurve& curve, double tau);

/// Arc length from tau_lo to tau: integral of |r'|.
double arclength(const ParametricCurve& curve, double tau,
                 const Tolerances& tol);

enum class MonotoneDirection { increasing, decreasing };

/// Monotone (tau, s) table with Newton-polished inversion in both
/// directions. Immutable after construction.
class ArcLengthMap {
 public:
  ArcLengthMap(const ParametricCurve& curve, const Tolerances& tol);

  double length() const { return svals_.back(); }
  double tau_lo() const { return taus_.front(); }
  double tau_hi() const { return taus_.back(); }

  double s_of_tau(double tau) const;
  /// Inverse map, polished so that |s(tau(s)) - s| stays at quadrature
  /// accuracy. s is accepted within eps_s of [0, length] and clamped.
  double tau_of_s(double s) const;

 private:
  ParametricCurve curve_;
  std::vector<double> taus_;
  std::vector<double> svals_;
  std::vector<double> speeds_;  // |r'| at the table nodes
  Tolerances tol_;
};

/// Evaluable signed curvature and its derivative on [0, L], certified
/// strictly monotone. Queries are pure; instances are immutable and safe
/// to share across threads.
class CurvatureModel {
 public:
  /// Wraps analytic kappa/kappa' evaluators; runs the monotonicity check.
  static CurvatureModel analytic(ScalarFn kappa, ScalarFn kappa_prime,
                                 double length, const Tolerances& tol);

  double kappa(double s) const { return kappa_(s); }
  double kappa_prime(double s) const { return kappa_prime_(s); }
  double length() const { return length_; }
  MonotoneDirection direction() const { return direction_; }
  const std::string& source() const { return source_; }

  /// Model of kappa composed with the end-for-end reflection s -> L - s.
  CurvatureModel reflected() const;

 private:
  friend std::pair<ArcLengthMap, CurvatureModel> reparametrize(
      const ParametricCurve&, const Tolerances&);

  CurvatureModel(ScalarFn kappa, ScalarFn kappa_prime, double length,
                 MonotoneDirection direction, std::string source)
      : kappa_(std::move(kappa)),
        kappa_prime_(std::move(kappa_prime)),
        length_(length),
        direction_(direction),
        source_(std::move(source)) {}

  ScalarFn kappa_;
  ScalarFn kappa_prime_;
  double length_;
  MonotoneDirection direction_;
  std::string source_;
};

/// Certifies strict monotonicity of kappa on [0, length] by a dense grid
/// scan (tol.scan_points samples). Throws MonotonicityViolation with the
/// offending sample pair. The grid resolution bounds the detectable
/// violation width.
MonotoneDirection check_strict_monotonicity(const ScalarFn& kappa,
                                            double length,
                                            const Tolerances& tol);
MonotoneDirection check_strict_monotonicity(const CurvatureModel& model,
                                            const Tolerances& tol);

/// Arc-length reparametrization of a polynomial curve. The returned model
/// evaluates kappa(s) through the inverse arc-length map and kappa'(s) by
/// the chain rule with exact polynomial differentiation.
std::pair<ArcLengthMap, CurvatureModel> reparametrize(
    const ParametricCurve& curve, const Tolerances& tol);

}  // namespace speedprof
