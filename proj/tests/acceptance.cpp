// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run directly or through ctest (test name "acceptance").

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "speedprof/oracle.hpp"
#include "speedprof/profile.hpp"

using namespace speedprof;
using corpus::at_most;
using corpus::fixed;
using corpus::free_bc;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int count_source_switches(const SpeedProfile& p) {
  int switches = 0;
  for (size_t i = 1; i < p.intervals().size(); ++i)
    if (p.intervals()[i].source != p.intervals()[i - 1].source) ++switches;
  return switches;
}

bool has_label(const SpeedProfile& p, std::string_view label) {
  for (const auto& iv : p.intervals())
    if (active_label(iv) == label) return true;
  return false;
}

// 1. Structural reproduction of the rest-to-rest cubic profile.
Criterion criterion1() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  const auto& cubic = corpus::cubic();
  const ProblemSpec spec = corpus::cubic_spec(fixed(0.0), fixed(0.0));
  const SpeedProfile p = solve(spec, cubic.model, cubic.tol);
  const double elapsed = seconds_since(t0);

  c.require(count_source_switches(p) == 1,
            "expected exactly one active-source switch, got " +
                std::to_string(count_source_switches(p)));
  c.require(active_label(p.intervals().front()) == "forward_accel",
            "profile must start on the forward acceleration line");
  c.require(active_label(p.intervals().back()) == "reverse_decel",
            "profile must end on the reverse deceleration line");
  c.require(p.evaluate(0.0).a_tan == 1.5, "a_tan at s=0 must be +1.5");
  c.require(p.evaluate(p.length()).a_tan == -2.0, "a_tan at s=L must be -2.0");

  double peak_v = 0.0;
  for (int i = 0; i <= 20000; ++i)
    peak_v = std::max(peak_v, std::sqrt(p.x(p.length() * i / 20000.0)));
  c.require(peak_v < 5.0,
            "peak speed " + std::to_string(peak_v) + " must stay below V");
  c.require(elapsed < 1.0,
            "runtime " + std::to_string(elapsed) + " s exceeds 1 s");
  c.detail << (c.detail.str().empty()
                   ? "peak v = " + std::to_string(peak_v) + " m/s, " +
                         std::to_string(elapsed) + " s"
                   : "");
  return c;
}

// 2. Structural reproduction of the remaining boundary variants.
Criterion criterion2() {
  Criterion c;
  const auto& cubic = corpus::cubic();
  const double eps_x = cubic.tol.eps_x;

  {  // raised initial speed: curvature and speed-cap contact
    const SpeedProfile p =
        solve(corpus::cubic_spec(fixed(2.5), fixed(0.0)), cubic.model,
              cubic.tol);
    c.require(has_label(p, "curvature"),
              "v0=2.5 profile must contain a curvature-bound interval");
    c.require(has_label(p, "speed_cap"),
              "v0=2.5 profile must contain a speed-cap interval");
  }
  {  // free boundaries: endpoint values on the state bound
    const SpeedProfile p =
        solve(corpus::cubic_spec(free_bc(), free_bc()), cubic.model,
              cubic.tol);
    const double cap0 = std::min(1.0 / std::abs(cubic.model.kappa(0.0)), 25.0);
    const double capL = std::min(
        1.0 / std::abs(cubic.model.kappa(cubic.model.length())), 25.0);
    c.require(std::abs(p.x(0.0) - cap0) <= eps_x,
              "free start must satisfy x*(0) = min(C/|kappa(0)|, V^2)");
    c.require(std::abs(p.x(p.length()) - capL) <= eps_x,
              "free end must satisfy x*(L) = min(C/|kappa(L)|, V^2)");
  }
  {  // both speeds prescribed: max acceleration at the ends
    const SpeedProfile p =
        solve(corpus::cubic_spec(fixed(2.5), fixed(1.5)), cubic.model,
              cubic.tol);
    c.require(p.evaluate(0.0).a_tan == 1.5,
              "v0=2.5,vL=1.5 profile must begin at a_tan = +A");
    c.require(p.evaluate(p.length()).a_tan == -2.0,
              "v0=2.5,vL=1.5 profile must finish at a_tan = -B");
  }
  return c;
}

// 3. Closed-form degenerate sweeps (monotone |kappa| from the boundary).
Criterion criterion3() {
  Criterion c;
  const Tolerances tol = Tolerances::for_problem(5.0, 5.0);
  {
    const CurvatureModel m = corpus::affine_model(1.0, 1.0, 5.0, tol);
    const SweepProfile f = forward_sweep(m, 1.5, 10.0, 1.0, tol);
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double s = 5.0 * i / 10000.0;
      const double expected = 1.0 + 3.0 * s;
      worst = std::max(worst, std::abs(f(s) - expected) / expected);
    }
    c.require(worst <= 1e-12, "forward line deviates by rel " +
                                  std::to_string(worst));
  }
  {
    const CurvatureModel m = corpus::affine_model(-1.0, 0.1, 5.0, tol);
    const SweepProfile r = reverse_sweep(m, 2.0, 10.0, 1.0, tol);
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const double s = 5.0 * i / 10000.0;
      const double expected = 1.0 + 4.0 * (5.0 - s);
      worst = std::max(worst, std::abs(r(s) - expected) / expected);
    }
    c.require(worst <= 1e-12, "reverse line deviates by rel " +
                                  std::to_string(worst));
  }
  return c;
}

// 4. Oracle dominance, grid convergence, and travel-time agreement.
Criterion criterion4() {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& pb : corpus::all_problems()) {
    const SpeedProfile p = solve(pb.spec, pb.model, pb.tol);
    const double bound_coeff =
        2.0 * std::max(pb.spec.limits.accel, pb.spec.limits.brake);

    double peak_x = 0.0;
    for (int i = 0; i <= 1000; ++i)
      peak_x = std::max(peak_x, p.x(pb.spec.length * i / 1000.0));
    // profiles made purely of acceleration lines are reproduced by the grid
    // to roundoff at every n; the ratio test only applies above this floor
    const double noise_floor = 1e-9 * std::max(1.0, peak_x);

    double prev_dev = -1.0;
    for (const int n : {1000, 10000, 100000}) {
      const GridSolution g = grid_solve(pb.spec, pb.model, n);
      const CompareMetrics m = compare(p, g, pb.tol);
      c.require(m.max_grid_minus_exact <= bound_coeff * g.ds,
                std::string(pb.name) + " n=" + std::to_string(n) +
                    ": dominance bound violated (" +
                    std::to_string(m.max_grid_minus_exact) + ")");
      if (prev_dev >= 0.0) {
        const bool converged = m.max_abs_deviation <= noise_floor ||
                               prev_dev / m.max_abs_deviation >= 1.8;
        c.require(converged, std::string(pb.name) + " n=" + std::to_string(n) +
                                 ": refinement ratio " +
                                 std::to_string(prev_dev /
                                                m.max_abs_deviation) +
                                 " below 1.8");
      }
      prev_dev = m.max_abs_deviation;
      if (n == 100000)
        c.require(m.travel_time_abs_diff <= 1e-3 * m.travel_time_exact,
                  std::string(pb.name) +
                      ": |J* - J_grid| = " +
                      std::to_string(m.travel_time_abs_diff) +
                      " exceeds 1e-3 J");
    }
  }
  const double elapsed = seconds_since(t0);
  c.require(elapsed < 30.0,
            "runtime " + std::to_string(elapsed) + " s exceeds 30 s");
  if (c.detail.str().empty()) c.detail << elapsed << " s total";
  return c;
}

// 5. Feasibility across randomized monotone problems.
Criterion criterion5() {
  Criterion c;
  std::mt19937 rng(20260809);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int solved = 0;
  int declared = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double L = 2.0 + 18.0 * unit(rng);
    const double k1 =
        (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.02 + 0.48 * unit(rng));
    const double k0 = -1.5 + 3.0 * unit(rng);
    const double A = 0.3 + 3.7 * unit(rng);
    const double B = 0.3 + 3.7 * unit(rng);
    const double C = 0.3 + 4.7 * unit(rng);
    const double V = 0.8 + 7.2 * unit(rng);
    const auto pick_bc = [&]() -> BoundaryCondition {
      const double u = unit(rng);
      if (u < 1.0 / 3) return free_bc();
      const double w = 1.1 * V * unit(rng);
      return u < 2.0 / 3 ? at_most(w) : fixed(w);
    };
    const Tolerances tol = Tolerances::for_problem(L, V);
    const ProblemSpec spec{{A, B, C, V}, pick_bc(), pick_bc(), L};
    const CurvatureModel model = corpus::affine_model(k0, k1, L, tol);
    try {
      const SpeedProfile p = solve(spec, model, tol);
      ++solved;
      const auto samples = sample_profile(p, tol);
      const FeasibilityReport rep =
          check_feasibility(samples, spec, model, tol, 1e-6);
      c.require(rep.satisfied,
                "trial " + std::to_string(trial) + " produced violations");
    } catch (const EqualityInfeasible&) {
      ++declared;  // a declared, documented error outcome
    }
  }
  c.require(solved > 0, "no random problem solved");
  if (c.detail.str().empty())
    c.detail << solved << " solved, " << declared
             << " declared equality-infeasible";
  return c;
}

// 6. Analytic switch point of the affine-curvature problem.
Criterion criterion6() {
  Criterion c;
  const Tolerances tol = Tolerances::for_problem(5.0, 3.0);
  const CurvatureModel m = corpus::affine_model(-1.0, 0.1, 5.0, tol);
  const SweepProfile f = forward_sweep(m, 0.1, 1.0, 2.0, tol);
  const double a0_expected = 10.0 * (1.0 - 1.0 / std::sqrt(2.0));
  c.require(!f.switch_a().empty() && std::isfinite(f.switch_a()[0]),
            "no finite exit switch found");
  if (!f.switch_a().empty() && std::isfinite(f.switch_a()[0]))
    c.require(std::abs(f.switch_a()[0] - a0_expected) <= tol.eps_s,
              "a_0 = " + std::to_string(f.switch_a()[0]) + " expected " +
                  std::to_string(a0_expected));
  const double xf5_expected = 2.0 * std::sqrt(2.0) - 1.0;
  c.require(std::abs(f(5.0) - xf5_expected) <= 1e-9,
            "x_F(5) = " + std::to_string(f(5.0)) + " expected " +
                std::to_string(xf5_expected));
  return c;
}

// 7. End-for-end reflection symmetry over the corpus.
Criterion criterion7() {
  Criterion c;
  for (const auto& pb : corpus::all_problems()) {
    ProblemSpec reflected = pb.spec;
    std::swap(reflected.limits.accel, reflected.limits.brake);
    std::swap(reflected.start_bc, reflected.end_bc);
    const SpeedProfile p = solve(pb.spec, pb.model, pb.tol);
    const SpeedProfile q = solve(reflected, pb.model.reflected(), pb.tol);
    double worst = 0.0;
    const double L = pb.spec.length;
    for (int i = 0; i <= 1000; ++i) {
      const double s = L * i / 1000.0;
      worst = std::max(worst, std::abs(p.x(s) - q.x(L - s)));
    }
    c.require(worst <= pb.tol.eps_x, std::string(pb.name) +
                                         ": reflection deviation " +
                                         std::to_string(worst));
  }
  return c;
}

// 8. Triangle travel-time closed form.
Criterion criterion8() {
  Criterion c;
  const auto problems = corpus::all_problems();
  const auto& tri = problems[5];
  const SpeedProfile p = solve(tri.spec, tri.model, tri.tol);
  const double A = tri.spec.limits.accel;
  const double B = tri.spec.limits.brake;
  const double L = tri.spec.length;
  const double expected =
      std::sqrt(2.0 * A * B * L / (A + B)) * (1.0 / A + 1.0 / B);
  const double J = travel_time(p, tri.tol);
  c.require(std::abs(J - expected) <= 1e-9 * expected,
            "J = " + std::to_string(J) + " expected " +
                std::to_string(expected));
  if (c.detail.str().empty()) c.detail << "J = " << J << " s";
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    Criterion (*fn)();
  };
  const Entry entries[] = {
      {"1. rest-to-rest cubic: single accel/decel switch", criterion1},
      {"2. cubic boundary variants: structural shapes", criterion2},
      {"3. closed-form degenerate sweeps", criterion3},
      {"4. grid oracle dominance, convergence, travel time", criterion4},
      {"5. randomized feasibility suite", criterion5},
      {"6. analytic switch point and terminal value", criterion6},
      {"7. reflection symmetry", criterion7},
      {"8. triangle travel-time closed form", criterion8},
  };

  int failures = 0;
  for (const Entry& e : entries) {
    Criterion c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail << "exception: " << ex.what();
    }
    std::printf("[%s] %s%s%s\n", c.pass ? "PASS" : "FAIL", e.title,
                c.detail.str().empty() ? "" : " -- ",
                c.detail.str().c_str());
    if (!c.pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
