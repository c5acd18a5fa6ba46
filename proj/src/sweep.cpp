#include "speedprof/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace speedprof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative positivity threshold for the cleared switch conditions. The
// re-entry condition is exactly zero at every accel-line anchor by
// construction (and has a double root under tangency), so sign tests must
// ignore roundoff-scale values there.
constexpr double kSwitchRel = 1e-12;

struct SweepBuild {
  double s0 = 0.0;
  std::vector<double> c;
  std::vector<double> a;
  std::vector<SweepSegment> segments;  // sweep frame
};

double curvature_cap(const CurvatureModel& m, double normal_limit, double s) {
  return normal_limit / std::abs(m.kappa(s));  // IEEE inf when kappa == 0
}

// a_k: first s in [lo, s0) with C|kappa'| > 2A kappa^2.
std::optional<double> first_accel_exit(const CurvatureModel& m, double accel,
                                       double normal_limit, double lo,
                                       double s0, const Tolerances& tol) {
  if (!(lo < s0)) return std::nullopt;
  const double scale = normal_limit * std::abs(m.kappa_prime(lo)) +
                       2.0 * accel * m.kappa(lo) * m.kappa(lo);
  const ScalarFn h = [&](double s) {
    const double k = m.kappa(s);
    return normal_limit * std::abs(m.kappa_prime(s)) - 2.0 * accel * k * k;
  };
  return find_first_sign_change(h, lo, s0, tol,
                                kSwitchRel * std::max(scale, 1e-300));
}

// c_{k+1}: first s in [lo, s0) with x_line(s)|kappa(s)| > C. The residual
// of the cleared condition maps to a constraint slack of |h|/|kappa| in
// squared speed, so the root is refined in value as well as location.
std::optional<double> first_curvature_entry(const CurvatureModel& m,
                                            double accel, double normal_limit,
                                            double anchor_s, double anchor_x,
                                            double lo, double s0,
                                            const Tolerances& tol) {
  if (!(lo < s0)) return std::nullopt;
  const ScalarFn h = [&](double s) {
    const double x = anchor_x + 2.0 * accel * (s - anchor_s);
    return x * std::abs(m.kappa(s)) - normal_limit;
  };
  return find_first_sign_change(h, lo, s0, tol, kSwitchRel * normal_limit,
                                0.0);
}

double find_s0_impl(const CurvatureModel& m, const Tolerances& tol) {
  const double L = m.length();
  const double k0 = m.kappa(0.0);
  const double kL = m.kappa(L);
  const bool increasing = m.direction() == MonotoneDirection::increasing;
  if (increasing) {
    if (k0 >= 0.0) return 0.0;  // |kappa| strictly increasing
    if (kL <= 0.0) return L;    // |kappa| strictly decreasing
  } else {
    if (k0 <= 0.0) return 0.0;
    if (kL >= 0.0) return L;
  }
  // sign change: the unique zero of kappa
  const ScalarFn f = increasing ? ScalarFn([&](double s) { return m.kappa(s); })
                                : ScalarFn([&](double s) { return -m.kappa(s); });
  const auto root = find_first_sign_change(f, 0.0, L, tol);
  return root.value_or(L);
}

SweepBuild run_sweep(const CurvatureModel& m, double accel,
                     double normal_limit, double v_start,
                     const Tolerances& tol) {
  const double L = m.length();
  SweepBuild out;
  out.s0 = find_s0_impl(m, tol);

  out.c.push_back(0.0);
  std::vector<std::pair<double, double>> lines;  // (anchor_s, anchor_x) per k
  int k = 0;

  const double x_start = v_start * v_start;
  if (x_start < curvature_cap(m, normal_limit, 0.0)) {
    out.a.push_back(0.0);
    lines.emplace_back(0.0, x_start);
    const auto c1 = first_curvature_entry(m, accel, normal_limit, 0.0, x_start,
                                          0.0, out.s0, tol);
    out.c.push_back(c1.value_or(kInf));
    k = 1;
  }

  int iters = 0;
  while (std::isfinite(out.c[k])) {
    if (++iters > tol.max_sweep_iters)
      throw SweepNonterminating(
          "sweep exceeded max_sweep_iters = " +
          std::to_string(tol.max_sweep_iters) +
          "; path violates the finite-switching regularity condition");
    const double ck = out.c[k];
    const auto ak = first_accel_exit(m, accel, normal_limit, ck, out.s0, tol);
    if (ak) {
      const double xa = curvature_cap(m, normal_limit, *ak);
      out.a.push_back(*ak);
      lines.emplace_back(*ak, xa);
      const auto cn = first_curvature_entry(m, accel, normal_limit, *ak, xa,
                                            *ak, out.s0, tol);
      out.c.push_back(cn.value_or(kInf));
    } else {
      out.a.push_back(kInf);
      out.c.push_back(kInf);
    }
    ++k;
  }

  // assemble the piecewise definition over [0, L]
  for (size_t n = 0; n < out.a.size(); ++n) {
    const double cn = out.c[n];
    const double an = out.a[n];
    if (!std::isfinite(an)) {
      out.segments.push_back({cn, L, SegmentKind::curvature_bound, 0, 0});
      break;
    }
    if (an > cn)
      out.segments.push_back({cn, an, SegmentKind::curvature_bound, 0, 0});
    const double end = std::isfinite(out.c[n + 1]) ? out.c[n + 1] : L;
    if (end > an || out.segments.empty())
      out.segments.push_back({an, end, SegmentKind::accel_line,
                              lines[n].first, lines[n].second});
    if (!std::isfinite(out.c[n + 1])) break;
  }
  return out;
}

}  // namespace

SweepProfile::SweepProfile(std::vector<SweepSegment> segments,
                           CurvatureModel model, SweepDirection direction,
                           double accel, double normal_limit,
                           double boundary_speed, std::vector<double> switch_c,
                           std::vector<double> switch_a, double s0_sweep_frame)
    : segments_(std::move(segments)),
      model_(std::move(model)),
      direction_(direction),
      accel_(accel),
      normal_limit_(normal_limit),
      boundary_speed_(boundary_speed),
      switch_c_(std::move(switch_c)),
      switch_a_(std::move(switch_a)),
      s0_(s0_sweep_frame) {}

const SweepSegment& SweepProfile::segment_at(double s) const {
  if (s < 0.0 || s > length())
    throw OutOfDomain("sweep evaluation outside [0, L]: s = " +
                      std::to_string(s));
  size_t i = 0;
  for (size_t j = 1; j < segments_.size() && segments_[j].s_start <= s; ++j)
    i = j;
  return segments_[i];
}

double SweepProfile::operator()(double s) const {
  const SweepSegment& seg = segment_at(s);
  if (seg.kind == SegmentKind::curvature_bound)
    return curvature_cap(model_, normal_limit_, s);
  const double offset = direction_ == SweepDirection::forward
                            ? s - seg.anchor_s
                            : seg.anchor_s - s;
  return seg.anchor_x + 2.0 * accel_ * offset;
}

double curvature_bound_slope(const CurvatureModel& model, double normal_limit,
                             double s) {
  const double k = model.kappa(s);
  const double sgn = k > 0 ? 1.0 : (k < 0 ? -1.0 : 0.0);
  return -normal_limit * sgn * model.kappa_prime(s) / (k * k);
}

double SweepProfile::derivative_at(double s) const {
  const SweepSegment& seg = segment_at(s);
  if (seg.kind == SegmentKind::accel_line)
    return direction_ == SweepDirection::forward ? 2.0 * accel_
                                                 : -2.0 * accel_;
  return curvature_bound_slope(model_, normal_limit_, s);
}

double SweepProfile::s0_original() const {
  return direction_ == SweepDirection::forward ? s0_ : length() - s0_;
}

std::vector<double> SweepProfile::switch_c_original() const {
  std::vector<double> out;
  for (double v : switch_c_)
    if (std::isfinite(v))
      out.push_back(direction_ == SweepDirection::forward ? v : length() - v);
  return out;
}

std::vector<double> SweepProfile::switch_a_original() const {
  std::vector<double> out;
  for (double v : switch_a_)
    if (std::isfinite(v))
      out.push_back(direction_ == SweepDirection::forward ? v : length() - v);
  return out;
}

std::vector<double> SweepProfile::boundaries() const {
  std::vector<double> b;
  b.reserve(segments_.size() + 1);
  for (const SweepSegment& seg : segments_) b.push_back(seg.s_start);
  b.push_back(segments_.back().s_end);
  return b;
}

bool SweepProfile::curvature_everywhere() const {
  return segments_.size() == 1 &&
         segments_.front().kind == SegmentKind::curvature_bound;
}

double SweepProfile::min_switch_gap() const {
  std::vector<double> pts;
  for (double v : switch_c_)
    if (std::isfinite(v)) pts.push_back(v);
  for (double v : switch_a_)
    if (std::isfinite(v)) pts.push_back(v);
  std::sort(pts.begin(), pts.end());
  double gap = kInf;
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i] > pts[i - 1]) gap = std::min(gap, pts[i] - pts[i - 1]);
  return gap;
}

double find_s0(const CurvatureModel& model, const Tolerances& tol) {
  return find_s0_impl(model, tol);
}

namespace {

SweepProfile make_profile(SweepBuild build, const CurvatureModel& original,
                          SweepDirection direction, double accel,
                          double normal_limit, double v_boundary) {
  const double L = original.length();
  std::vector<SweepSegment> segs = std::move(build.segments);
  if (direction == SweepDirection::reverse) {
    // map sweep-frame segments through s -> L - s
    std::reverse(segs.begin(), segs.end());
    for (SweepSegment& seg : segs) {
      const double start = L - seg.s_end;
      const double end = L - seg.s_start;
      seg.s_start = start;
      seg.s_end = end;
      if (seg.kind == SegmentKind::accel_line) seg.anchor_s = L - seg.anchor_s;
    }
  }
  return SweepProfile(std::move(segs), original, direction, accel,
                      normal_limit, v_boundary, std::move(build.c),
                      std::move(build.a), build.s0);
}

}  // namespace

SweepProfile forward_sweep(const CurvatureModel& model, double accel,
                           double normal_limit, double v_start,
                           const Tolerances& tol) {
  if (!(accel > 0) || !(normal_limit > 0))
    throw InvalidLimits("forward_sweep: acceleration limits must be > 0");
  if (v_start < 0) throw InvalidLimits("forward_sweep: boundary speed < 0");
  SweepBuild build = run_sweep(model, accel, normal_limit, v_start, tol);
  return make_profile(std::move(build), model, SweepDirection::forward, accel,
                      normal_limit, v_start);
}

SweepProfile reverse_sweep(const CurvatureModel& model, double braking,
                           double normal_limit, double v_end,
                           const Tolerances& tol) {
  if (!(braking > 0) || !(normal_limit > 0))
    throw InvalidLimits("reverse_sweep: acceleration limits must be > 0");
  if (v_end < 0) throw InvalidLimits("reverse_sweep: boundary speed < 0");
  SweepBuild build =
      run_sweep(model.reflected(), braking, normal_limit, v_end, tol);
  return make_profile(std::move(build), model, SweepDirection::reverse,
                      braking, normal_limit, v_end);
}

double evaluate_sweep(const SweepProfile& profile, double s) {
  return profile(s);
}

}  // namespace speedprof
