#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "speedprof/oracle.hpp"
#include "speedprof/profile.hpp"

namespace speedprof {

/// A parsed problem file: limits/boundaries, the curvature model (built
/// from a polynomial path or an analytic curvature expression), and the
/// effective tolerances.
struct ProblemInputs {
  ProblemSpec spec;
  CurvatureModel model;
  Tolerances tol;
  int output_samples = 1000;
};

/// Parses a problem JSON document. Throws ParseError with the offending
/// field named; propagates MonotonicityViolation and DegenerateCurve from
/// model construction.
ProblemInputs parse_problem(const nlohmann::json& doc);

/// Reads and parses a problem file (see parse_problem).
ProblemInputs load_problem(const std::string& path);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Profile CSV: header s,x,v,a_tan,a_norm,active; `samples` uniform rows
/// merged with all profile breakpoints. Dot decimal separator, \n newlines.
void write_profile_csv(std::ostream& os, const SpeedProfile& profile,
                       int samples);

/// Grid CSV: header s,x.
void write_grid_csv(std::ostream& os, const GridSolution& grid);

/// Solve sidecar: switch points of both sweeps (original arc-length
/// coordinates; infinity sentinels omitted), s0, travel time, boundary
/// statuses, breakpoints and diagnostics.
nlohmann::json sidecar_json(const SpeedProfile& profile,
                            const Tolerances& tol);

nlohmann::json feasibility_json(const FeasibilityReport& report);

nlohmann::json compare_json(const CompareMetrics& metrics,
                            const GridSolution& grid,
                            const ProblemSpec& spec);

/// Reads (s, x) pairs from a profile CSV (any file with s and x columns).
/// Throws ParseError on malformed rows or strictly decreasing s.
std::vector<std::pair<double, double>> read_profile_csv(std::istream& is);

}  // namespace speedprof
