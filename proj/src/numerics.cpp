#include "speedprof/numerics.hpp"

#include <cmath>
#include <vector>

namespace speedprof {

Tolerances Tolerances::for_problem(double length, double speed_limit) {
  Tolerances tol;
  tol.eps_s = 1e-9 * length;
  tol.eps_x = 1e-9 * speed_limit * speed_limit;
  return tol;
}

void Tolerances::validate() const {
  if (!(eps_s > 0) || !(eps_x > 0) || !(quad_rel > 0))
    throw InvalidLimits("tolerances must be strictly positive");
  if (max_sweep_iters < 1) throw InvalidLimits("max_sweep_iters must be >= 1");
  if (scan_points < 2) throw InvalidLimits("scan_points must be >= 2");
}

std::optional<double> find_first_sign_change(const ScalarFn& f, double lo,
                                             double hi, const Tolerances& tol,
                                             double positive_threshold,
                                             double value_tol) {
  if (!(lo <= hi)) return std::nullopt;
  const auto positive = [&](double s) { return f(s) > positive_threshold; };
  if (positive(lo)) return lo;
  if (lo == hi) return std::nullopt;

  const int n = tol.scan_points;
  double a = lo;
  double b = hi;
  bool bracketed = false;
  for (int i = 1; i < n; ++i) {
    const double s = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
    if (positive(s)) {
      b = s;
      bracketed = true;
      break;
    }
    a = s;
  }
  if (!bracketed) return std::nullopt;

  // invariant: f(a) <= threshold < f(b)
  double mid = 0.5 * (a + b);
  while (true) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;  // bracket at floating resolution
    mid = m;
    const double fm = f(m);
    if (fm > positive_threshold)
      b = m;
    else
      a = m;
    if (b - a <= tol.eps_s && std::abs(fm) <= value_tol) break;
  }
  return mid;
}

namespace {

// Gauss-Kronrod (7,15) nodes/weights on [-1,1]; Kronrod nodes in
// decreasing order, odd entries are the embedded Gauss points.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct PanelResult {
  double value;
  double error;
};

double eval_checked(const ScalarFn& f, double s) {
  const double y = f(s);
  if (!std::isfinite(y))
    throw NonFiniteValue("integrand is not finite at s = " +
                         std::to_string(s));
  return y;
}

PanelResult gk15(const ScalarFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = eval_checked(f, c);
  double k15 = kWgk[7] * fc;
  double g7 = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double yi = eval_checked(f, c - dx) + eval_checked(f, c + dx);
    k15 += kWgk[i] * yi;
    if (i % 2 == 1) g7 += kWg[i / 2] * yi;
  }
  k15 *= h;
  g7 *= h;
  const double diff = 200.0 * std::abs(k15 - g7);
  return {k15, diff * std::sqrt(diff)};
}

double integrate_adaptive(const ScalarFn& f, double a, double b, double scale,
                          double rel, int depth) {
  const PanelResult r = gk15(f, a, b);
  if (r.error <= rel * std::max(std::abs(r.value), scale) || depth >= 48 ||
      b - a < 1e-14 * scale)
    return r.value;
  const double m = 0.5 * (a + b);
  return integrate_adaptive(f, a, m, scale, rel, depth + 1) +
         integrate_adaptive(f, m, b, scale, rel, depth + 1);
}

}  // namespace

double integrate(const ScalarFn& f, double lo, double hi,
                 const Tolerances& tol) {
  if (!(lo <= hi)) throw OutOfDomain("integrate: lo > hi");
  if (lo == hi) return 0.0;
  const PanelResult first = gk15(f, lo, hi);
  const double scale = std::max(std::abs(first.value), hi - lo);
  if (first.error <= tol.quad_rel * scale) return first.value;
  const double m = 0.5 * (lo + hi);
  return integrate_adaptive(f, lo, m, scale, tol.quad_rel, 1) +
         integrate_adaptive(f, m, hi, scale, tol.quad_rel, 1);
}

double argmin_scalar(const ScalarFn& f, double lo, double hi,
                     const Tolerances& tol) {
  if (!(lo <= hi)) throw OutOfDomain("argmin_scalar: lo > hi");
  if (lo == hi) return lo;

  const int n = tol.scan_points;
  int best = 0;
  double fbest = f(lo);
  for (int i = 1; i < n; ++i) {
    const double s = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
    const double fs = f(s);
    if (fs < fbest) {
      fbest = fs;
      best = i;
    }
  }
  if (best == 0) return lo;
  if (best == n - 1) return hi;

  const auto at = [&](int i) {
    return lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  };
  double a = at(best - 1);
  double b = at(best + 1);

  // golden-section on the bracketing triple
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol.eps_s) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
    if (x1 >= x2) break;  // floating resolution
  }
  return 0.5 * (a + b);
}

}  // namespace speedprof
