#pragma once

#include <vector>

#include "speedprof/profile.hpp"

namespace speedprof {

/// Discrete maximal-feasible squared-speed profile on a uniform grid.
struct GridSolution {
  double ds = 0.0;
  std::vector<double> s;
  std::vector<double> x;
};

/// Brute-force comparator: clamps a forward pass
///   x_{i+1} = min(limit_{i+1}, x_i + 2A ds)
/// and a backward pass
///   x_i = min(x_i, x_{i+1} + 2B ds)
/// against the node-wise state limits and boundary speeds. Pointwise
/// maximal among grid-feasible profiles and deterministic. Requires
/// nodes >= 2 (InvalidLimits otherwise).
GridSolution grid_solve(const ProblemSpec& spec, const CurvatureModel& model,
                        int nodes);

struct CompareMetrics {
  double max_abs_deviation = 0.0;        ///< max |x* - x_grid| over nodes
  double max_grid_minus_exact = 0.0;     ///< max signed (x_grid - x*)
  double travel_time_exact = 0.0;
  double travel_time_grid = 0.0;
  double travel_time_abs_diff = 0.0;
};

/// Node-wise deviation metrics plus a trapezoid travel time on the grid.
/// Cells with one vanishing endpoint use the closed-form local value
/// 2 ds / sqrt(x_nonzero) (the exact integral for linear x through zero).
CompareMetrics compare(const SpeedProfile& profile, const GridSolution& grid,
                       const Tolerances& tol);

}  // namespace speedprof
