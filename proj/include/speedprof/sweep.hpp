#pragma once

#include <vector>

#include "speedprof/geometry.hpp"
#include "speedprof/numerics.hpp"

namespace speedprof {

enum class SegmentKind { curvature_bound, accel_line };
enum class SweepDirection { forward, reverse };

/// One piece of a sweep profile, in original arc-length coordinates.
/// Accel lines evaluate to anchor_x + 2*accel*(s - anchor_s) on forward
/// sweeps and anchor_x + 2*accel*(anchor_s - s) on reverse sweeps;
/// curvature segments evaluate to normal_limit / |kappa(s)|.
struct SweepSegment {
  double s_start = 0.0;
  double s_end = 0.0;
  SegmentKind kind = SegmentKind::curvature_bound;
  double anchor_s = 0.0;
  double anchor_x = 0.0;
};

/// Output of one sweep: an ordered partition of [0, L] into curvature-bound
/// and constant-acceleration segments, plus the switch points that produced
/// it. Immutable; evaluation is reentrant.
class SweepProfile {
 public:
  SweepProfile(std::vector<SweepSegment> segments, CurvatureModel model,
               SweepDirection direction, double accel, double normal_limit,
               double boundary_speed, std::vector<double> switch_c,
               std::vector<double> switch_a, double s0_sweep_frame);

  /// Piecewise evaluation at s in [0, L]; +inf only possible on a
  /// curvature segment where kappa vanishes. Throws OutOfDomain.
  double operator()(double s) const;

  /// Analytic slope dx/ds of the segment containing s (right-continuous
  /// segment lookup, so this is the right-derivative at breakpoints).
  double derivative_at(double s) const;

  SegmentKind kind_at(double s) const { return segment_at(s).kind; }

  double length() const { return model_.length(); }
  SweepDirection direction() const { return direction_; }
  double accel() const { return accel_; }
  double normal_limit() const { return normal_limit_; }
  double boundary_speed() const { return boundary_speed_; }

  /// Minimizer of |kappa| in the frame the sweep ran in.
  double s0() const { return s0_; }
  double s0_original() const;

  /// Switch points in the sweep's own travel coordinate, possibly ending
  /// with a +inf sentinel (the empty-infimum convention).
  const std::vector<double>& switch_c() const { return switch_c_; }
  const std::vector<double>& switch_a() const { return switch_a_; }
  /// Finite switch points mapped to original arc-length coordinates.
  std::vector<double> switch_c_original() const;
  std::vector<double> switch_a_original() const;

  const std::vector<SweepSegment>& segments() const { return segments_; }
  /// Segment boundaries in original coordinates, ascending, including 0, L.
  std::vector<double> boundaries() const;

  /// True when the whole profile is the curvature bound (the degenerate
  /// closed-form shape occurring when the boundary speed already exceeds
  /// it at the sweep start and |kappa| only grows).
  bool curvature_everywhere() const;

  /// Diagnostic: minimum spacing between consecutive finite switch points.
  /// Crossings closer than the scan spacing cannot be resolved.
  double min_switch_gap() const;

  const CurvatureModel& model() const { return model_; }

 private:
  const SweepSegment& segment_at(double s) const;

  std::vector<SweepSegment> segments_;  // original frame, ascending
  CurvatureModel model_;                // original frame
  SweepDirection direction_;
  double accel_;
  double normal_limit_;
  double boundary_speed_;
  std::vector<double> switch_c_;  // sweep frame
  std::vector<double> switch_a_;
  double s0_;  // sweep frame
};

/// Minimizer of |kappa| over [0, L] for a certified monotone model: the
/// unique interior zero of kappa when the sign changes, otherwise the
/// endpoint selected by the monotone direction and sign.
double find_s0(const CurvatureModel& model, const Tolerances& tol);

/// Slope of the curvature bound normal_limit/|kappa| at s.
double curvature_bound_slope(const CurvatureModel& model, double normal_limit,
                             double s);

/// Forward sweep: starts from squared speed v_start at s = 0 and alternates
/// between the curvature bound and lines of slope 2*accel, switching at the
/// first crossings of the cleared conditions
///   C|kappa'(s)| - 2A kappa(s)^2 > 0   (leave the curvature bound) and
///   x_k(s)|kappa(s)| - C > 0           (re-enter it),
/// both restricted to [., s0). Throws InvalidLimits and SweepNonterminating.
SweepProfile forward_sweep(const CurvatureModel& model, double accel,
                           double normal_limit, double v_start,
                           const Tolerances& tol);

/// Reverse sweep: the forward sweep applied to the reflected model with the
/// braking limit, mapped back through s -> L - s.
SweepProfile reverse_sweep(const CurvatureModel& model, double braking,
                           double normal_limit, double v_end,
                           const Tolerances& tol);

/// Free-function evaluation (same as profile.operator()).
double evaluate_sweep(const SweepProfile& profile, double s);

}  // namespace speedprof
