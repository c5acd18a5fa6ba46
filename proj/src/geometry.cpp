#include "speedprof/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace speedprof {

namespace {

constexpr int kArcTableIntervals = 4096;

std::vector<double> poly_mul(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> poly_sub(std::vector<double> a,
                             const std::vector<double>& b) {
  a.resize(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

std::vector<double> poly_add(std::vector<double> a,
                             const std::vector<double>& b) {
  a.resize(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<double> poly_scale(std::vector<double> a, double c) {
  for (double& v : a) v *= c;
  return a;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

ParametricCurve::ParametricCurve(Polynomial x, Polynomial y, double tau_lo,
                                 double tau_hi)
    : x_(std::move(x)),
      y_(std::move(y)),
      dx_(x_.derivative()),
      dy_(y_.derivative()),
      ddx_(dx_.derivative()),
      ddy_(dy_.derivative()),
      tau_lo_(tau_lo),
      tau_hi_(tau_hi) {
  if (!(tau_lo_ < tau_hi_))
    throw DegenerateCurve("curve parameter domain is empty");
}

double ParametricCurve::speed(double tau) const {
  const double n = d1(tau).norm();
  if (!(n > 1e-14))
    throw DegenerateCurve("|r'(tau)| vanishes at tau = " + std::to_string(tau));
  return n;
}

double curvature_from_derivatives(const Eigen::Vector2d& d1,
                                  const Eigen::Vector2d& d2) {
  const double n = d1.norm();
  if (!(n > 1e-14))
    throw DegenerateCurve("|r'| vanishes: curve is not regular");
  const double cross = d1.x() * d2.y() - d1.y() * d2.x();
  return cross / (n * n * n);
}

double curvature_of_parametric(const ParametricCurve& curve, double tau) {
  try {
    return curvature_from_derivatives(curve.d1(tau), curve.d2(tau));
  } catch (const DegenerateCurve&) {
    throw DegenerateCurve("|r'(tau)| vanishes at tau = " + std::to_string(tau));
  }
}

double arclength(const ParametricCurve& curve, double tau,
                 const Tolerances& tol) {
  if (tau < curve.tau_lo() || tau > curve.tau_hi())
    throw OutOfDomain("arclength: tau outside parameter domain");
  return integrate([&](double t) { return curve.speed(t); }, curve.tau_lo(),
                   tau, tol);
}

ArcLengthMap::ArcLengthMap(const ParametricCurve& curve, const Tolerances& tol)
    : curve_(curve), tol_(tol) {
  const int n = kArcTableIntervals + 1;
  taus_.resize(n);
  svals_.resize(n);
  speeds_.resize(n);
  for (int i = 0; i < n; ++i) {
    taus_[i] = curve.tau_lo() + (curve.tau_hi() - curve.tau_lo()) *
                                    (static_cast<double>(i) / (n - 1));
    speeds_[i] = curve.speed(taus_[i]);  // throws on a degenerate node
  }
  const auto [mn, mx] = std::minmax_element(speeds_.begin(), speeds_.end());
  if (*mn < 1e-12 * *mx)
    throw DegenerateCurve("curve is nearly singular: min/max |r'| = " +
                          std::to_string(*mn / *mx));

  svals_[0] = 0.0;
  const ScalarFn sp = [&](double t) { return curve.speed(t); };
  for (int i = 1; i < n; ++i)
    svals_[i] = svals_[i - 1] + integrate(sp, taus_[i - 1], taus_[i], tol);
}

double ArcLengthMap::s_of_tau(double tau) const {
  if (tau < tau_lo() || tau > tau_hi())
    throw OutOfDomain("s_of_tau: tau outside parameter domain");
  const auto it = std::upper_bound(taus_.begin(), taus_.end(), tau);
  const int i = std::max<int>(1, static_cast<int>(it - taus_.begin())) - 1;
  return svals_[i] + integrate([&](double t) { return curve_.speed(t); },
                               taus_[i], tau, tol_);
}

double ArcLengthMap::tau_of_s(double s) const {
  const double L = length();
  if (s < -tol_.eps_s || s > L + tol_.eps_s)
    throw OutOfDomain("tau_of_s: s outside [0, L]");
  s = std::clamp(s, 0.0, L);

  const auto it = std::upper_bound(svals_.begin(), svals_.end(), s);
  const int i = std::clamp<int>(static_cast<int>(it - svals_.begin()) - 1, 0,
                                static_cast<int>(svals_.size()) - 2);

  // cubic Hermite initial guess for tau(s): dtau/ds = 1/|r'| at the nodes
  const double h = svals_[i + 1] - svals_[i];
  const double t = (s - svals_[i]) / h;
  const double m0 = h / speeds_[i];
  const double m1 = h / speeds_[i + 1];
  const double t2 = t * t;
  const double t3 = t2 * t;
  double tau = (2 * t3 - 3 * t2 + 1) * taus_[i] + (t3 - 2 * t2 + t) * m0 +
               (-2 * t3 + 3 * t2) * taus_[i + 1] + (t3 - t2) * m1;
  tau = std::clamp(tau, taus_[i], taus_[i + 1]);

  // Newton polish on the local arc-length residual
  const ScalarFn sp = [&](double x) { return curve_.speed(x); };
  const double target = s - svals_[i];
  for (int iter = 0; iter < 4; ++iter) {
    const double r = integrate(sp, taus_[i], tau, tol_) - target;
    if (std::abs(r) <= 1e-14 * std::max(1.0, L)) break;
    tau = std::clamp(tau - r / curve_.speed(tau), taus_[i], taus_[i + 1]);
  }
  return tau;
}

MonotoneDirection check_strict_monotonicity(const ScalarFn& kappa,
                                            double length,
                                            const Tolerances& tol) {
  const int n = std::max(tol.scan_points, 2);
  double prev_s = 0.0;
  double prev_k = kappa(0.0);
  const double k_end = kappa(length);
  if (!std::isfinite(prev_k) || !std::isfinite(k_end))
    throw NonFiniteValue("kappa is not finite at a path endpoint");
  if (prev_k == k_end)
    throw MonotonicityViolation("kappa has equal endpoint values", 0.0,
                                length);
  const bool increasing = k_end > prev_k;

  for (int i = 1; i < n; ++i) {
    const double s = length * (static_cast<double>(i) / (n - 1));
    const double k = kappa(s);
    if (!std::isfinite(k))
      throw NonFiniteValue("kappa is not finite at s = " + std::to_string(s));
    const bool ok = increasing ? (k > prev_k) : (k < prev_k);
    if (!ok)
      throw MonotonicityViolation(
          "kappa not strictly monotone between s = " + std::to_string(prev_s) +
              " and s = " + std::to_string(s),
          prev_s, s);
    prev_s = s;
    prev_k = k;
  }
  return increasing ? MonotoneDirection::increasing
                    : MonotoneDirection::decreasing;
}

MonotoneDirection check_strict_monotonicity(const CurvatureModel& model,
                                            const Tolerances& tol) {
  return check_strict_monotonicity([&](double s) { return model.kappa(s); },
                                   model.length(), tol);
}

CurvatureModel CurvatureModel::analytic(ScalarFn kappa, ScalarFn kappa_prime,
                                        double length, const Tolerances& tol) {
  if (!(length > 0)) throw InvalidLimits("path length must be positive");
  const MonotoneDirection dir = check_strict_monotonicity(kappa, length, tol);
  return CurvatureModel(std::move(kappa), std::move(kappa_prime), length, dir,
                        "analytic");
}

CurvatureModel CurvatureModel::reflected() const {
  const double L = length_;
  const MonotoneDirection dir = direction_ == MonotoneDirection::increasing
                                    ? MonotoneDirection::decreasing
                                    : MonotoneDirection::increasing;
  return CurvatureModel([k = kappa_, L](double s) { return k(L - s); },
                        [kp = kappa_prime_, L](double s) { return -kp(L - s); },
                        L, dir, source_);
}

std::pair<ArcLengthMap, CurvatureModel> reparametrize(
    const ParametricCurve& curve, const Tolerances& tol) {
  auto map = std::make_shared<const ArcLengthMap>(curve, tol);
  auto shared_curve = std::make_shared<const ParametricCurve>(curve);

  // exact dkappa/dtau: kappa = n/d^(3/2) with n = x'y'' - y'x'',
  // d = x'^2 + y'^2, so dkappa/dtau = (n'd - (3/2) n d') / d^(5/2)
  const Polynomial xp = curve.x().derivative();
  const Polynomial yp = curve.y().derivative();
  const Polynomial xpp = xp.derivative();
  const Polynomial ypp = yp.derivative();
  const Polynomial num(poly_sub(poly_mul(xp.coeffs(), ypp.coeffs()),
                                poly_mul(yp.coeffs(), xpp.coeffs())));
  const Polynomial den(poly_add(poly_mul(xp.coeffs(), xp.coeffs()),
                                poly_mul(yp.coeffs(), yp.coeffs())));
  const Polynomial dnum_t(
      poly_sub(poly_mul(num.derivative().coeffs(), den.coeffs()),
               poly_scale(poly_mul(num.coeffs(), den.derivative().coeffs()),
                          1.5)));

  ScalarFn kappa_s = [map, shared_curve](double s) {
    return curvature_of_parametric(*shared_curve, map->tau_of_s(s));
  };
  ScalarFn kappa_prime_s = [map, den, dnum_t](double s) {
    const double tau = map->tau_of_s(s);
    const double d = den(tau);
    const double dkdtau = dnum_t(tau) / (d * d * std::sqrt(d));
    return dkdtau / std::sqrt(d);  // chain rule: ds/dtau = |r'| = sqrt(d)
  };

  const MonotoneDirection dir =
      check_strict_monotonicity(kappa_s, map->length(), tol);
  CurvatureModel model(std::move(kappa_s), std::move(kappa_prime_s),
                       map->length(), dir, "from-curve");
  return {*map, std::move(model)};
}

}  // namespace speedprof
