#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "speedprof/oracle.hpp"
#include "speedprof/problem_io.hpp"
#include "speedprof/profile.hpp"

namespace {

using namespace speedprof;

constexpr int kExitGeneral = 1;
constexpr int kExitParse = 2;
constexpr int kExitMonotonicity = 3;
constexpr int kExitNonterminating = 4;
constexpr int kExitEqualityInfeasible = 5;

std::string sidecar_path(const std::string& csv_path) {
  const size_t dot = csv_path.find_last_of('.');
  const size_t slash = csv_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return csv_path + ".json";
  std::string candidate = csv_path.substr(0, dot) + ".json";
  if (candidate == csv_path) candidate = csv_path + ".meta.json";
  return candidate;
}

void apply_env_overrides(Tolerances& tol) {
  const char* scan = std::getenv("SPEEDPROF_SCAN_POINTS");
  if (scan == nullptr) return;
  try {
    tol.scan_points = std::stoi(scan);
  } catch (const std::exception&) {
    throw ParseError("SPEEDPROF_SCAN_POINTS is not an integer: " +
                     std::string(scan));
  }
  tol.validate();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open output file: " + path);
  return os;
}

int cmd_solve(const std::string& problem_path, const std::string& out_path) {
  ProblemInputs in = load_problem(problem_path);
  apply_env_overrides(in.tol);
  const SpeedProfile profile = solve(in.spec, in.model, in.tol);

  auto csv = open_output(out_path);
  write_profile_csv(csv, profile, in.output_samples);

  auto meta = open_output(sidecar_path(out_path));
  meta << sidecar_json(profile, in.tol).dump(2) << '\n';

  std::cout << "wrote " << out_path << " and " << sidecar_path(out_path)
            << " (J = " << format_double(travel_time(profile, in.tol))
            << " s)\n";
  return 0;
}

int cmd_validate(const std::string& problem_path,
                 const std::string& csv_path) {
  ProblemInputs in = load_problem(problem_path);
  apply_env_overrides(in.tol);

  std::ifstream is(csv_path);
  if (!is) throw ParseError("cannot open profile CSV: " + csv_path);
  const auto samples = read_profile_csv(is);

  const double L = in.model.length();
  const double span_tol = std::max(in.tol.eps_s, 1e-9 * L);
  if (samples.front().first > span_tol ||
      samples.back().first < L - span_tol)
    throw ParseError("profile CSV does not cover [0, L]");

  const FeasibilityReport rep =
      check_feasibility(samples, in.spec, in.model, in.tol);
  std::cout << feasibility_json(rep).dump(2) << '\n';
  return rep.satisfied ? 0 : 1;
}

int cmd_oracle(const std::string& problem_path, int nodes,
               const std::string& out_path) {
  ProblemInputs in = load_problem(problem_path);
  apply_env_overrides(in.tol);

  const GridSolution grid = grid_solve(in.spec, in.model, nodes);
  const SpeedProfile profile = solve(in.spec, in.model, in.tol);
  const CompareMetrics metrics = compare(profile, grid, in.tol);

  auto csv = open_output(out_path);
  write_grid_csv(csv, grid);
  auto meta = open_output(sidecar_path(out_path));
  const nlohmann::json j = compare_json(metrics, grid, in.spec);
  meta << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "speedprof: exact time-optimal speed profiles along planar paths "
      "with strictly monotone signed curvature"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string out_path;
  std::string csv_path;
  int nodes = 10001;

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve a problem file, write CSV + JSON");
  solve_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  solve_cmd->add_option("-o,--output", out_path, "output CSV path")
      ->required();

  CLI::App* validate_cmd = app.add_subcommand(
      "validate", "check a profile CSV against the problem constraints");
  validate_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  validate_cmd->add_option("profile", csv_path, "profile CSV to check")
      ->required();

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "brute-force grid solution and comparison metrics");
  oracle_cmd->add_option("problem", problem_path, "problem JSON file")
      ->required();
  oracle_cmd->add_option("-n,--nodes", nodes, "grid node count (>= 2)")
      ->required();
  oracle_cmd->add_option("-o,--output", out_path, "output CSV path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(problem_path, out_path);
    if (validate_cmd->parsed()) return cmd_validate(problem_path, csv_path);
    if (oracle_cmd->parsed()) return cmd_oracle(problem_path, nodes, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvalidLimits& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const MonotonicityViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMonotonicity;
  } catch (const SweepNonterminating& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonterminating;
  } catch (const EqualityInfeasible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEqualityInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitGeneral;
  }
  return kExitGeneral;
}
