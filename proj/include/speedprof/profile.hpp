#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "speedprof/sweep.hpp"

namespace speedprof {

enum class BoundaryKind { fixed, at_most, free };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::fixed;
  double speed = 0.0;  ///< ignored when kind == free
};

/// Acceleration/speed limits of the time-optimal problem.
struct Limits {
  double accel = 1.0;         ///< max tangential acceleration [m/s^2]
  double brake = 1.0;         ///< max braking deceleration [m/s^2]
  double normal_accel = 1.0;  ///< max normal acceleration [m/s^2]
  double speed = 1.0;         ///< max speed [m/s]
};

struct ProblemSpec {
  Limits limits;
  BoundaryCondition start_bc;
  BoundaryCondition end_bc;
  double length = 1.0;  ///< path length [m]

  /// Throws InvalidLimits unless all limits, the length, and any bounded
  /// boundary speeds are in range.
  void validate() const;
};

enum class ActiveSource { forward_sweep, reverse_sweep, speed_cap };

struct ProfileInterval {
  double s_start = 0.0;
  double s_end = 0.0;
  ActiveSource source = ActiveSource::speed_cap;
  SegmentKind kind = SegmentKind::accel_line;  ///< of the owning sweep segment
};

/// CSV label for an interval: forward_accel | reverse_decel | curvature |
/// speed_cap.
std::string_view active_label(const ProfileInterval& interval);

struct Kinematics {
  double x = 0.0;       ///< squared speed [m^2/s^2]
  double v = 0.0;       ///< speed [m/s]
  double a_tan = 0.0;   ///< tangential acceleration [m/s^2]
  double a_norm = 0.0;  ///< normal acceleration [m/s^2]
  ActiveSource source = ActiveSource::speed_cap;
  std::string_view label;
};

/// The combined optimal squared-speed profile: the pointwise minimum of the
/// forward sweep, the reverse sweep, and the squared speed limit, with an
/// interval partition recording which source is active where. Immutable
/// after construction; all queries are reentrant.
class SpeedProfile {
 public:
  /// min{x_F(s), x_R(s), V^2}, evaluated exactly as that expression.
  double x(double s) const;

  /// Full kinematic state at s. Tangential acceleration uses the active
  /// segment's analytic slope with a right-derivative convention at
  /// breakpoints; s = L uses the final interval.
  Kinematics evaluate(double s) const;

  const std::vector<ProfileInterval>& intervals() const { return intervals_; }
  std::vector<double> breakpoints() const;

  const SweepProfile& forward() const { return forward_; }
  const SweepProfile& reverse() const { return reverse_; }
  const ProblemSpec& spec() const { return spec_; }
  const CurvatureModel& model() const { return forward_.model(); }
  double length() const { return forward_.length(); }
  double v_start() const { return v_start_; }  ///< resolved boundary speeds
  double v_end() const { return v_end_; }
  std::optional<double> cached_travel_time() const { return travel_time_; }

 private:
  friend SpeedProfile solve(const ProblemSpec&, const CurvatureModel&,
                            const Tolerances&);

  SpeedProfile(SweepProfile forward, SweepProfile reverse, ProblemSpec spec,
               double v_start, double v_end,
               std::vector<ProfileInterval> intervals)
      : forward_(std::move(forward)),
        reverse_(std::move(reverse)),
        spec_(std::move(spec)),
        v_start_(v_start),
        v_end_(v_end),
        intervals_(std::move(intervals)) {}

  const ProfileInterval& interval_at(double s) const;

  SweepProfile forward_;
  SweepProfile reverse_;
  ProblemSpec spec_;
  double v_start_;
  double v_end_;
  std::vector<ProfileInterval> intervals_;
  std::optional<double> travel_time_;
};

/// Effective boundary speeds: free endpoints map to
/// min{sqrt(C/|kappa|), V}, bounded endpoints pass their speed through.
std::pair<double, double> resolve_boundaries(const ProblemSpec& spec,
                                             const CurvatureModel& model);

/// Runs both sweeps, merges their breakpoints with the crossing points of
/// the three candidate curves, and returns the pointwise-min profile.
/// Throws EqualityInfeasible when a fixed boundary speed cannot be met;
/// propagates SweepNonterminating and InvalidLimits.
SpeedProfile solve(const ProblemSpec& spec, const CurvatureModel& model,
                   const Tolerances& tol);

/// Total traversal time: closed forms on acceleration lines and the speed
/// cap, adaptive quadrature of sqrt(|kappa|/C) on curvature segments.
/// Endpoint zeros of x are integrable and handled in closed form. Throws
/// InfiniteTime if x vanishes on an interval of positive length.
double travel_time(const SpeedProfile& profile, const Tolerances& tol);

struct Violation {
  double s = 0.0;
  double amount = 0.0;  ///< excess beyond the limit (positive)
};

/// Worst violation per constraint group; entries appear only when the
/// excess exceeds eps_x (values) or slope_tol (difference-quotient slopes).
struct FeasibilityReport {
  bool satisfied = true;
  std::optional<Violation> slope;
  std::optional<Violation> start_bound;
  std::optional<Violation> end_bound;
  std::optional<Violation> state_bound;
  double grid_spacing = 0.0;  ///< largest sample spacing checked
};

/// Checks a sampled profile (sorted by s, covering [0, L]) against the
/// problem constraints: boundary inequalities at the ends, the
/// curvature/speed state bound at every sample, and the acceleration band
/// on every adjacent difference quotient.
FeasibilityReport check_feasibility(
    std::span<const std::pair<double, double>> samples,
    const ProblemSpec& spec, const CurvatureModel& model,
    const Tolerances& tol, double slope_tol = 1e-6);

/// Default feasibility sampling: 4*scan_points uniform samples plus all
/// profile breakpoints.
std::vector<std::pair<double, double>> sample_profile(
    const SpeedProfile& profile, const Tolerances& tol);

enum class BoundaryStatus { met, infeasible_as_equality, not_applicable };

struct BoundaryCheckResult {
  BoundaryStatus start = BoundaryStatus::not_applicable;
  BoundaryStatus end = BoundaryStatus::not_applicable;
};

/// For each fixed endpoint, reports whether the solved profile attains the
/// requested squared speed within eps_x. If it does not, no feasible
/// profile does.
BoundaryCheckResult equality_boundary_check(const SpeedProfile& profile,
                                            const ProblemSpec& spec,
                                            const Tolerances& tol);

}  // namespace speedprof
