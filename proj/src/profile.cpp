#include "speedprof/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace speedprof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double square(double v) { return v * v; }

}  // namespace

void ProblemSpec::validate() const {
  if (!(limits.accel > 0) || !(limits.brake > 0) ||
      !(limits.normal_accel > 0) || !(limits.speed > 0))
    throw InvalidLimits("limits A, B, C, V must be strictly positive");
  if (!(length > 0)) throw InvalidLimits("path length must be positive");
  for (const BoundaryCondition& bc : {start_bc, end_bc})
    if (bc.kind != BoundaryKind::free && !(bc.speed >= 0))
      throw InvalidLimits("boundary speeds must be non-negative");
}

std::string_view active_label(const ProfileInterval& interval) {
  if (interval.source == ActiveSource::speed_cap) return "speed_cap";
  if (interval.kind == SegmentKind::curvature_bound) return "curvature";
  return interval.source == ActiveSource::forward_sweep ? "forward_accel"
                                                        : "reverse_decel";
}

std::pair<double, double> resolve_boundaries(const ProblemSpec& spec,
                                             const CurvatureModel& model) {
  const auto resolve = [&](const BoundaryCondition& bc, double s) {
    if (bc.kind != BoundaryKind::free) return bc.speed;
    const double cap =
        spec.limits.normal_accel / std::abs(model.kappa(s));  // inf ok
    return std::min(std::sqrt(cap), spec.limits.speed);
  };
  return {resolve(spec.start_bc, 0.0), resolve(spec.end_bc, model.length())};
}

double SpeedProfile::x(double s) const {
  return std::min({forward_(s), reverse_(s), square(spec_.limits.speed)});
}

const ProfileInterval& SpeedProfile::interval_at(double s) const {
  if (s < 0.0 || s > length())
    throw OutOfDomain("profile evaluation outside [0, L]: s = " +
                      std::to_string(s));
  size_t i = 0;
  for (size_t j = 1; j < intervals_.size() && intervals_[j].s_start <= s; ++j)
    i = j;
  return intervals_[i];
}

Kinematics SpeedProfile::evaluate(double s) const {
  const ProfileInterval& iv = interval_at(s);
  Kinematics out;
  out.x = x(s);
  out.v = std::sqrt(out.x);
  out.source = iv.source;
  out.label = active_label(iv);
  out.a_norm = out.x * std::abs(model().kappa(s));
  switch (iv.source) {
    case ActiveSource::speed_cap:
      out.a_tan = 0.0;
      break;
    case ActiveSource::forward_sweep:
      out.a_tan =
          iv.kind == SegmentKind::accel_line
              ? spec_.limits.accel
              : 0.5 * curvature_bound_slope(model(), spec_.limits.normal_accel,
                                            s);
      break;
    case ActiveSource::reverse_sweep:
      out.a_tan =
          iv.kind == SegmentKind::accel_line
              ? -spec_.limits.brake
              : 0.5 * curvature_bound_slope(model(), spec_.limits.normal_accel,
                                            s);
      break;
  }
  return out;
}

std::vector<double> SpeedProfile::breakpoints() const {
  std::vector<double> b;
  b.reserve(intervals_.size() + 1);
  for (const ProfileInterval& iv : intervals_) b.push_back(iv.s_start);
  b.push_back(intervals_.back().s_end);
  return b;
}

namespace {

// One transversal crossing of g = fa - fb inside [p, q]; refined to eps_s.
template <typename Fa, typename Fb>
std::optional<double> crossing_in(const Fa& fa, const Fb& fb, double p,
                                  double q, const Tolerances& tol) {
  const double gp = fa(p) - fb(p);
  const double gq = fa(q) - fb(q);
  if (!std::isfinite(gp) || !std::isfinite(gq)) return std::nullopt;
  if (gp == 0.0 || gq == 0.0) return std::nullopt;  // endpoint already a breakpoint
  if ((gp < 0.0) == (gq < 0.0)) return std::nullopt;
  double a = p;
  double b = q;
  while (b - a > tol.eps_s) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double gm = fa(m) - fb(m);
    if ((gm < 0.0) == (gp < 0.0))
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

SpeedProfile solve(const ProblemSpec& spec, const CurvatureModel& model,
                   const Tolerances& tol) {
  spec.validate();
  tol.validate();
  const double L = model.length();
  if (std::abs(L - spec.length) > std::max(tol.eps_s, 1e-9 * spec.length))
    throw InvalidLimits("spec.length disagrees with the curvature model");

  const auto [v0, vL] = resolve_boundaries(spec, model);
  SweepProfile fwd =
      forward_sweep(model, spec.limits.accel, spec.limits.normal_accel, v0, tol);
  SweepProfile rev =
      reverse_sweep(model, spec.limits.brake, spec.limits.normal_accel, vL, tol);
  const double cap = square(spec.limits.speed);

  // Closed-form degenerate shapes: when one sweep is the curvature bound
  // everywhere it lies above the other sweep pointwise, so it never owns an
  // interval and is excluded from crossing detection.
  const bool drop_f = fwd.curvature_everywhere() && fwd.s0_original() == 0.0;
  const bool drop_r = rev.curvature_everywhere() && rev.s0_original() == L;

  std::vector<double> pts = fwd.boundaries();
  {
    const std::vector<double> rb = rev.boundaries();
    pts.insert(pts.end(), rb.begin(), rb.end());
  }

  const auto eval_f = [&](double s) { return fwd(s); };
  const auto eval_r = [&](double s) { return rev(s); };
  const auto eval_cap = [&](double) { return cap; };

  // a pairwise crossing is a breakpoint only when the pair is actually
  // competitive there (its value is the pointwise min at the crossing)
  const auto keep_if_active = [&](std::optional<double> c, double other) {
    if (!c) return;
    const double v = std::min({fwd(*c), rev(*c), cap});
    if (other <= v + tol.eps_x) pts.push_back(*c);
  };

  std::vector<double> base = pts;
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  for (size_t i = 0; i + 1 < base.size(); ++i) {
    const double p = base[i];
    const double q = base[i + 1];
    if (!(q > p)) continue;
    if (!drop_f && !drop_r)
      if (auto c = crossing_in(eval_f, eval_r, p, q, tol))
        keep_if_active(c, fwd(*c));
    if (!drop_f)
      if (auto c = crossing_in(eval_f, eval_cap, p, q, tol))
        keep_if_active(c, fwd(*c));
    if (!drop_r)
      if (auto c = crossing_in(eval_r, eval_cap, p, q, tol))
        keep_if_active(c, rev(*c));
  }

  std::sort(pts.begin(), pts.end());
  std::vector<double> bps;
  for (double p : pts) {
    p = std::clamp(p, 0.0, L);
    if (bps.empty() || p - bps.back() > tol.eps_s) bps.push_back(p);
  }
  if (bps.back() < L) {
    if (L - bps.back() <= tol.eps_s)
      bps.back() = L;
    else
      bps.push_back(L);
  }
  bps.front() = 0.0;

  std::vector<ProfileInterval> intervals;
  intervals.reserve(bps.size() - 1);
  for (size_t i = 0; i + 1 < bps.size(); ++i) {
    const double p = bps[i];
    const double q = bps[i + 1];
    const double m = 0.5 * (p + q);
    const double vf = drop_f ? kInf : fwd(m);
    const double vr = drop_r ? kInf : rev(m);
    ProfileInterval iv;
    iv.s_start = p;
    iv.s_end = q;
    if (cap <= vf && cap <= vr) {
      iv.source = ActiveSource::speed_cap;
      iv.kind = SegmentKind::accel_line;  // unused for the cap
    } else if (vf <= vr) {
      iv.source = ActiveSource::forward_sweep;
      iv.kind = fwd.kind_at(m);
    } else {
      iv.source = ActiveSource::reverse_sweep;
      iv.kind = rev.kind_at(m);
    }
    intervals.push_back(iv);
  }

  SpeedProfile profile(std::move(fwd), std::move(rev), spec, v0, vL,
                       std::move(intervals));

  const BoundaryCheckResult bc = equality_boundary_check(profile, spec, tol);
  if (bc.start == BoundaryStatus::infeasible_as_equality)
    throw EqualityInfeasible(
        "fixed start speed cannot be met: x*(0) = " +
        std::to_string(profile.x(0.0)) + " < v0^2 = " + std::to_string(v0 * v0));
  if (bc.end == BoundaryStatus::infeasible_as_equality)
    throw EqualityInfeasible(
        "fixed end speed cannot be met: x*(L) = " +
        std::to_string(profile.x(L)) + " < vL^2 = " + std::to_string(vL * vL));

  profile.travel_time_ = travel_time(profile, tol);
  return profile;
}

double travel_time(const SpeedProfile& profile, const Tolerances& tol) {
  if (profile.cached_travel_time()) return *profile.cached_travel_time();
  const ProblemSpec& spec = profile.spec();
  const CurvatureModel& model = profile.model();
  double total = 0.0;
  for (const ProfileInterval& iv : profile.intervals()) {
    const double p = iv.s_start;
    const double q = iv.s_end;
    if (!(q > p)) continue;
    const double xp = profile.x(p);
    const double xq = profile.x(q);
    if (xp <= 0.0 && xq <= 0.0)
      throw InfiniteTime("profile vanishes on [" + std::to_string(p) + ", " +
                         std::to_string(q) + "]");
    switch (iv.source) {
      case ActiveSource::speed_cap:
        total += (q - p) / spec.limits.speed;
        break;
      case ActiveSource::forward_sweep:
        if (iv.kind == SegmentKind::accel_line) {
          total += (std::sqrt(xq) - std::sqrt(xp)) / spec.limits.accel;
        } else {
          total += integrate(
              [&](double s) {
                return std::sqrt(std::abs(model.kappa(s)) /
                                 spec.limits.normal_accel);
              },
              p, q, tol);
        }
        break;
      case ActiveSource::reverse_sweep:
        if (iv.kind == SegmentKind::accel_line) {
          total += (std::sqrt(xp) - std::sqrt(xq)) / spec.limits.brake;
        } else {
          total += integrate(
              [&](double s) {
                return std::sqrt(std::abs(model.kappa(s)) /
                                 spec.limits.normal_accel);
              },
              p, q, tol);
        }
        break;
    }
  }
  return total;
}

FeasibilityReport check_feasibility(
    std::span<const std::pair<double, double>> samples,
    const ProblemSpec& spec, const CurvatureModel& model,
    const Tolerances& tol, double slope_tol) {
  FeasibilityReport rep;
  if (samples.empty()) return rep;
  const auto [v0, vL] = resolve_boundaries(spec, model);
  const double cap = square(spec.limits.speed);

  const auto worse = [](std::optional<Violation>& slot, double s,
                        double amount) {
    if (!slot || amount > slot->amount) slot = Violation{s, amount};
  };

  const double start_excess = samples.front().second - square(v0);
  if (start_excess > tol.eps_x)
    worse(rep.start_bound, samples.front().first, start_excess);
  const double end_excess = samples.back().second - square(vL);
  if (end_excess > tol.eps_x)
    worse(rep.end_bound, samples.back().first, end_excess);

  for (const auto& [s, xv] : samples) {
    const double limit =
        std::min(spec.limits.normal_accel / std::abs(model.kappa(s)), cap);
    const double excess = xv - limit;
    if (excess > tol.eps_x) worse(rep.state_bound, s, excess);
  }

  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const double ds = samples[i + 1].first - samples[i].first;
    // below the root-location resolution, evaluation noise dominates the
    // difference quotient
    if (!(ds > tol.eps_s)) continue;
    rep.grid_spacing = std::max(rep.grid_spacing, ds);
    const double slope = (samples[i + 1].second - samples[i].second) / ds;
    if (slope > 2.0 * spec.limits.accel + slope_tol)
      worse(rep.slope, samples[i].first, slope - 2.0 * spec.limits.accel);
    if (slope < -2.0 * spec.limits.brake - slope_tol)
      worse(rep.slope, samples[i].first, -2.0 * spec.limits.brake - slope);
  }

  rep.satisfied =
      !rep.slope && !rep.start_bound && !rep.end_bound && !rep.state_bound;
  return rep;
}

std::vector<std::pair<double, double>> sample_profile(
    const SpeedProfile& profile, const Tolerances& tol) {
  const double L = profile.length();
  std::vector<double> ss;
  const int n = 4 * tol.scan_points;
  ss.reserve(n + 16);
  for (int i = 0; i <= n; ++i)
    ss.push_back(L * (static_cast<double>(i) / n));
  for (double b : profile.breakpoints()) ss.push_back(std::clamp(b, 0.0, L));
  std::sort(ss.begin(), ss.end());

  std::vector<std::pair<double, double>> out;
  out.reserve(ss.size());
  for (double s : ss) {
    if (!out.empty() && s - out.back().first < 0.25 * tol.eps_s) continue;
    out.emplace_back(s, profile.x(s));
  }
  return out;
}

BoundaryCheckResult equality_boundary_check(const SpeedProfile& profile,
                                            const ProblemSpec& spec,
                                            const Tolerances& tol) {
  BoundaryCheckResult out;
  if (spec.start_bc.kind == BoundaryKind::fixed)
    out.start = std::abs(profile.x(0.0) - square(spec.start_bc.speed)) <=
                        tol.eps_x
                    ? BoundaryStatus::met
                    : BoundaryStatus::infeasible_as_equality;
  if (spec.end_bc.kind == BoundaryKind::fixed)
    out.end = std::abs(profile.x(profile.length()) -
                       square(spec.end_bc.speed)) <= tol.eps_x
                  ? BoundaryStatus::met
                  : BoundaryStatus::infeasible_as_equality;
  return out;
}

}  // namespace speedprof
