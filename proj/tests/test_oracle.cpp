#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "speedprof/oracle.hpp"

using namespace speedprof;
using corpus::fixed;

TEST_CASE("grid_solve: triangle profile against the closed form") {
  const auto problems = corpus::all_problems();
  const auto& tri = problems[5];
  const double A = tri.spec.limits.accel;
  const double B = tri.spec.limits.brake;
  const double L = tri.spec.length;
  const GridSolution g = grid_solve(tri.spec, tri.model, 5001);
  for (size_t i = 0; i < g.s.size(); ++i) {
    const double expected = std::min(2.0 * A * g.s[i], 2.0 * B * (L - g.s[i]));
    CHECK(std::abs(g.x[i] - expected) <= 2.0 * std::max(A, B) * g.ds + 1e-12);
  }
}

TEST_CASE("grid_solve: V-cap everywhere") {
  const Tolerances tol = Tolerances::for_problem(5.0, 0.1);
  const CurvatureModel m = corpus::affine_model(-1.0, 0.1, 5.0, tol);
  const ProblemSpec spec{{1.0, 1.0, 1.0, 0.1}, fixed(0.1), fixed(0.1), 5.0};
  const GridSolution g = grid_solve(spec, m, 1001);
  for (double x : g.x) CHECK(x == doctest::Approx(0.01).epsilon(1e-15));

  const SpeedProfile p = solve(spec, m, tol);
  const CompareMetrics metrics = compare(p, g, tol);
  CHECK(metrics.max_abs_deviation <= 1e-12);
  CHECK(metrics.max_grid_minus_exact <= 1e-12);
  CHECK(metrics.travel_time_abs_diff <= 1e-9 * metrics.travel_time_exact);
}

TEST_CASE("grid_solve: discrete constraints hold exactly, idempotent") {
  const auto problems = corpus::all_problems();
  const auto& pb = problems[1];  // cubic_fast_entry
  const int n = 2001;
  const GridSolution g = grid_solve(pb.spec, pb.model, n);
  const double cap = pb.spec.limits.speed * pb.spec.limits.speed;
  const auto [v0, vL] = resolve_boundaries(pb.spec, pb.model);

  CHECK(g.x.front() <= v0 * v0);
  CHECK(g.x.back() <= vL * vL);
  for (int i = 0; i < n; ++i) {
    const double limit = std::min(
        pb.spec.limits.normal_accel / std::abs(pb.model.kappa(g.s[i])), cap);
    CHECK(g.x[i] <= limit);
    if (i > 0) {
      // same floating expressions as the construction: exact by design
      CHECK(g.x[i] <= g.x[i - 1] + 2.0 * pb.spec.limits.accel * g.ds);
      CHECK(g.x[i - 1] <= g.x[i] + 2.0 * pb.spec.limits.brake * g.ds);
    }
  }

  // idempotence: re-running both passes changes nothing
  GridSolution h = g;
  const double accel_step = 2.0 * pb.spec.limits.accel * h.ds;
  const double brake_step = 2.0 * pb.spec.limits.brake * h.ds;
  for (int i = 1; i < n; ++i)
    h.x[i] = std::min(h.x[i], h.x[i - 1] + accel_step);
  for (int i = n - 2; i >= 0; --i)
    h.x[i] = std::min(h.x[i], h.x[i + 1] + brake_step);
  for (int i = 0; i < n; ++i) CHECK(h.x[i] == g.x[i]);
}

TEST_CASE("grid_solve: monotone in the limits") {
  const auto problems = corpus::all_problems();
  const auto& pb = problems[1];
  const int n = 801;
  const GridSolution base = grid_solve(pb.spec, pb.model, n);
  for (int which = 0; which < 4; ++which) {
    ProblemSpec bigger = pb.spec;
    switch (which) {
      case 0: bigger.limits.accel *= 1.5; break;
      case 1: bigger.limits.brake *= 1.5; break;
      case 2: bigger.limits.normal_accel *= 1.5; break;
      case 3: bigger.limits.speed *= 1.5; break;
    }
    const GridSolution g = grid_solve(bigger, pb.model, n);
    for (int i = 0; i < n; ++i) CHECK(g.x[i] >= base.x[i] - 1e-15);
  }
}

TEST_CASE("compare: dominance and first-order convergence on the fast-entry cubic") {
  const auto problems = corpus::all_problems();
  const auto& pb = problems[1];
  const SpeedProfile p = solve(pb.spec, pb.model, pb.tol);
  const double bound_coeff =
      2.0 * std::max(pb.spec.limits.accel, pb.spec.limits.brake);

  double prev_dev = 0.0;
  for (const int n : {1001, 10001}) {
    const GridSolution g = grid_solve(pb.spec, pb.model, n);
    const CompareMetrics m = compare(p, g, pb.tol);
    CHECK(m.max_grid_minus_exact <= bound_coeff * g.ds);
    CHECK(m.max_grid_minus_exact >= -1e-12);  // grid dominates at the nodes
    if (prev_dev > 0.0) CHECK(prev_dev / m.max_abs_deviation >= 1.8);
    prev_dev = m.max_abs_deviation;
  }
}

TEST_CASE("compare: deviation roughly halves when the grid doubles") {
  const auto problems = corpus::all_problems();
  const auto& pb = problems[3];  // cubic_bounded
  const SpeedProfile p = solve(pb.spec, pb.model, pb.tol);
  const CompareMetrics coarse =
      compare(p, grid_solve(pb.spec, pb.model, 2001), pb.tol);
  const CompareMetrics fine =
      compare(p, grid_solve(pb.spec, pb.model, 4001), pb.tol);
  CHECK(coarse.max_abs_deviation / fine.max_abs_deviation >= 1.5);
}

TEST_CASE("compare: travel time agreement on the triangle") {
  const auto problems = corpus::all_problems();
  const auto& tri = problems[5];
  const SpeedProfile p = solve(tri.spec, tri.model, tri.tol);
  const GridSolution g = grid_solve(tri.spec, tri.model, 100001);
  const CompareMetrics m = compare(p, g, tri.tol);
  CHECK(m.travel_time_abs_diff <= 1e-3 * m.travel_time_exact);
}

TEST_CASE("grid_solve: node count guard") {
  const auto problems = corpus::all_problems();
  CHECK_THROWS_AS(grid_solve(problems[5].spec, problems[5].model, 1),
                  InvalidLimits);
}
