#include "speedprof/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace speedprof {

GridSolution grid_solve(const ProblemSpec& spec, const CurvatureModel& model,
                        int nodes) {
  spec.validate();
  if (nodes < 2) throw InvalidLimits("grid_solve requires at least 2 nodes");

  const double L = model.length();
  const auto [v0, vL] = resolve_boundaries(spec, model);
  const double cap = spec.limits.speed * spec.limits.speed;

  GridSolution g;
  g.ds = L / (nodes - 1);
  g.s.resize(nodes);
  g.x.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    g.s[i] = L * (static_cast<double>(i) / (nodes - 1));
    g.x[i] =
        std::min(spec.limits.normal_accel / std::abs(model.kappa(g.s[i])), cap);
  }

  const double accel_step = 2.0 * spec.limits.accel * g.ds;
  const double brake_step = 2.0 * spec.limits.brake * g.ds;
  g.x[0] = std::min(g.x[0], v0 * v0);
  for (int i = 1; i < nodes; ++i)
    g.x[i] = std::min(g.x[i], g.x[i - 1] + accel_step);
  g.x[nodes - 1] = std::min(g.x[nodes - 1], vL * vL);
  for (int i = nodes - 2; i >= 0; --i)
    g.x[i] = std::min(g.x[i], g.x[i + 1] + brake_step);
  return g;
}

CompareMetrics compare(const SpeedProfile& profile, const GridSolution& grid,
                       const Tolerances& tol) {
  CompareMetrics m;
  for (size_t i = 0; i < grid.s.size(); ++i) {
    const double exact = profile.x(grid.s[i]);
    const double d = grid.x[i] - exact;
    m.max_abs_deviation = std::max(m.max_abs_deviation, std::abs(d));
    m.max_grid_minus_exact = std::max(m.max_grid_minus_exact, d);
  }

  double j = 0.0;
  for (size_t i = 0; i + 1 < grid.x.size(); ++i) {
    const double xa = grid.x[i];
    const double xb = grid.x[i + 1];
    if (xa > 0.0 && xb > 0.0) {
      j += 0.5 * (1.0 / std::sqrt(xa) + 1.0 / std::sqrt(xb)) * grid.ds;
    } else if (xa > 0.0 || xb > 0.0) {
      j += 2.0 * grid.ds / std::sqrt(std::max(xa, xb));
    } else {
      j = std::numeric_limits<double>::infinity();
      break;
    }
  }
  m.travel_time_grid = j;
  m.travel_time_exact = travel_time(profile, tol);
  m.travel_time_abs_diff = std::abs(m.travel_time_grid - m.travel_time_exact);
  return m;
}

}  // namespace speedprof
