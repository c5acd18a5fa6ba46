#include "speedprof/problem_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace speedprof {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key, const char* where) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field '") + key + "' in " + where);
  return *it;
}

double require_number(const json& j, const char* key, const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_number())
    throw ParseError(std::string("field '") + key + "' in " + where +
                     " must be a number");
  return v.get<double>();
}

std::vector<double> require_coeffs(const json& j, const char* key,
                                   const char* where) {
  const json& v = require(j, key, where);
  if (!v.is_array() || v.empty())
    throw ParseError(std::string("field '") + key + "' in " + where +
                     " must be a non-empty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number())
      throw ParseError(std::string("field '") + key + "' in " + where +
                       " must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

BoundaryCondition parse_boundary(const json& j, const char* key) {
  const json& v = require(j, key, "boundary");
  if (v.is_number()) {
    if (v.get<double>() < 0)
      throw ParseError(std::string("boundary '") + key +
                       "' must be non-negative");
    return {BoundaryKind::fixed, v.get<double>()};
  }
  if (v.is_string()) {
    if (v.get<std::string>() == "free") return {BoundaryKind::free, 0.0};
    throw ParseError(std::string("boundary '") + key +
                     "' string value must be \"free\"");
  }
  if (v.is_object()) {
    const double w = require_number(v, "at_most", key);
    if (w < 0)
      throw ParseError(std::string("boundary '") + key +
                       "' at_most value must be non-negative");
    return {BoundaryKind::at_most, w};
  }
  throw ParseError(std::string("boundary '") + key +
                   "' must be a number, \"free\", or {\"at_most\": w}");
}

void apply_numerics_overrides(const json& doc, Tolerances& tol) {
  const auto it = doc.find("numerics");
  if (it == doc.end()) return;
  const json& n = *it;
  if (n.contains("eps_s")) tol.eps_s = n["eps_s"].get<double>();
  if (n.contains("eps_x")) tol.eps_x = n["eps_x"].get<double>();
  if (n.contains("quad_rel")) tol.quad_rel = n["quad_rel"].get<double>();
  if (n.contains("max_sweep_iters"))
    tol.max_sweep_iters = n["max_sweep_iters"].get<int>();
  if (n.contains("scan_points")) tol.scan_points = n["scan_points"].get<int>();
  try {
    tol.validate();
  } catch (const InvalidLimits& e) {
    throw ParseError(std::string("numerics: ") + e.what());
  }
}

Polynomial poly_from(const std::vector<double>& coeffs) {
  return Polynomial(coeffs);
}

ScalarFn poly_eval_fn(std::vector<double> coeffs) {
  Polynomial p(std::move(coeffs));
  return [p](double s) { return p(s); };
}

}  // namespace

ProblemInputs parse_problem(const json& doc) {
  if (!doc.is_object()) throw ParseError("problem document must be an object");

  const json& limits_j = require(doc, "limits", "problem");
  Limits limits;
  limits.accel = require_number(limits_j, "A", "limits");
  limits.brake = require_number(limits_j, "B", "limits");
  limits.normal_accel = require_number(limits_j, "C", "limits");
  limits.speed = require_number(limits_j, "V", "limits");

  const json& boundary_j = require(doc, "boundary", "problem");
  const BoundaryCondition start_bc = parse_boundary(boundary_j, "v0");
  const BoundaryCondition end_bc = parse_boundary(boundary_j, "vL");

  const json& path = require(doc, "path", "problem");
  const std::string kind =
      require(path, "kind", "path").is_string()
          ? path["kind"].get<std::string>()
          : throw ParseError("path.kind must be a string");

  int output_samples = 1000;
  if (const auto it = doc.find("outputs"); it != doc.end()) {
    output_samples = static_cast<int>(require_number(*it, "samples", "outputs"));
    if (output_samples < 2)
      throw ParseError("outputs.samples must be at least 2");
  }

  if (kind == "polynomial") {
    const ParametricCurve curve(poly_from(require_coeffs(path, "x_coeffs", "path")),
                                poly_from(require_coeffs(path, "y_coeffs", "path")),
                                require_number(path, "tau_lo", "path"),
                                require_number(path, "tau_hi", "path"));
    // provisional pass to learn the length, then rebuild with scaled
    // tolerances so eps_s/eps_x match the problem
    Tolerances provisional;
    const ArcLengthMap probe(curve, provisional);
    Tolerances tol = Tolerances::for_problem(probe.length(), limits.speed);
    apply_numerics_overrides(doc, tol);
    auto [map, model] = reparametrize(curve, tol);
    ProblemSpec spec{limits, start_bc, end_bc, map.length()};
    spec.validate();
    return ProblemInputs{spec, std::move(model), tol, output_samples};
  }

  if (kind == "analytic_curvature") {
    const std::string expr =
        require(path, "expression", "path").is_string()
            ? path["expression"].get<std::string>()
            : throw ParseError("path.expression must be a string");
    if (expr != "poly")
      throw ParseError("path.expression '" + expr +
                       "' is not supported (expected \"poly\")");
    const std::vector<double> coeffs = require_coeffs(path, "coeffs", "path");
    const double length = require_number(path, "L", "path");
    if (!(length > 0)) throw ParseError("path.L must be positive");

    Tolerances tol = Tolerances::for_problem(length, limits.speed);
    apply_numerics_overrides(doc, tol);
    Polynomial kp = Polynomial(coeffs).derivative();
    CurvatureModel model = CurvatureModel::analytic(
        poly_eval_fn(coeffs), [kp](double s) { return kp(s); }, length, tol);
    ProblemSpec spec{limits, start_bc, end_bc, length};
    spec.validate();
    return ProblemInputs{spec, std::move(model), tol, output_samples};
  }

  throw ParseError("path.kind '" + kind +
                   "' is not supported (expected \"polynomial\" or "
                   "\"analytic_curvature\")");
}

ProblemInputs load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("problem file is not valid JSON: ") +
                     e.what());
  }
  return parse_problem(doc);
}

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<double> merged_sample_positions(const SpeedProfile& profile,
                                            int samples) {
  const double L = profile.length();
  const int n = std::max(samples, 2);
  std::vector<double> ss;
  ss.reserve(n + 8);
  for (int i = 0; i < n; ++i)
    ss.push_back(L * (static_cast<double>(i) / (n - 1)));
  for (double b : profile.breakpoints())
    ss.push_back(std::clamp(b, 0.0, L));
  std::sort(ss.begin(), ss.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
  return ss;
}

}  // namespace

void write_profile_csv(std::ostream& os, const SpeedProfile& profile,
                       int samples) {
  os << "s,x,v,a_tan,a_norm,active\n";
  for (double s : merged_sample_positions(profile, samples)) {
    const Kinematics k = profile.evaluate(s);
    os << format_double(s) << ',' << format_double(k.x) << ','
       << format_double(k.v) << ',' << format_double(k.a_tan) << ','
       << format_double(k.a_norm) << ',' << k.label << '\n';
  }
}

void write_grid_csv(std::ostream& os, const GridSolution& grid) {
  os << "s,x\n";
  for (size_t i = 0; i < grid.s.size(); ++i)
    os << format_double(grid.s[i]) << ',' << format_double(grid.x[i]) << '\n';
}

namespace {

json finite_array(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values)
    if (std::isfinite(v)) arr.push_back(v);
  return arr;
}

const char* status_name(BoundaryStatus st) {
  switch (st) {
    case BoundaryStatus::met:
      return "met";
    case BoundaryStatus::infeasible_as_equality:
      return "infeasible_as_equality";
    default:
      return "not_applicable";
  }
}

json violation_json(const std::optional<Violation>& v) {
  if (!v) return nullptr;
  return json{{"s", v->s}, {"excess", v->amount}};
}

}  // namespace

json sidecar_json(const SpeedProfile& profile, const Tolerances& tol) {
  const BoundaryCheckResult bc =
      equality_boundary_check(profile, profile.spec(), tol);
  json out;
  out["s0"] = profile.forward().s0_original();
  out["travel_time"] = travel_time(profile, tol);
  out["boundary_speeds"] = {{"v0", profile.v_start()},
                            {"vL", profile.v_end()}};
  out["boundary_status"] = {{"start", status_name(bc.start)},
                            {"end", status_name(bc.end)}};
  out["forward"] = {{"c", finite_array(profile.forward().switch_c_original())},
                    {"a", finite_array(profile.forward().switch_a_original())}};
  out["reverse"] = {{"c", finite_array(profile.reverse().switch_c_original())},
                    {"a", finite_array(profile.reverse().switch_a_original())}};
  out["breakpoints"] = profile.breakpoints();
  json intervals = json::array();
  for (const ProfileInterval& iv : profile.intervals())
    intervals.push_back(json{{"s_start", iv.s_start},
                             {"s_end", iv.s_end},
                             {"active", std::string(active_label(iv))}});
  out["intervals"] = intervals;
  json diag = json::object();
  if (std::isfinite(profile.forward().min_switch_gap()))
    diag["min_switch_gap_forward"] = profile.forward().min_switch_gap();
  if (std::isfinite(profile.reverse().min_switch_gap()))
    diag["min_switch_gap_reverse"] = profile.reverse().min_switch_gap();
  out["diagnostics"] = diag;
  return out;
}

json feasibility_json(const FeasibilityReport& report) {
  return json{{"satisfied", report.satisfied},
              {"grid_spacing", report.grid_spacing},
              {"violations",
               {{"slope", violation_json(report.slope)},
                {"start_bound", violation_json(report.start_bound)},
                {"end_bound", violation_json(report.end_bound)},
                {"state_bound", violation_json(report.state_bound)}}}};
}

json compare_json(const CompareMetrics& metrics, const GridSolution& grid,
                  const ProblemSpec& spec) {
  const double bound =
      2.0 * std::max(spec.limits.accel, spec.limits.brake) * grid.ds;
  return json{{"nodes", grid.s.size()},
              {"ds", grid.ds},
              {"max_abs_deviation", metrics.max_abs_deviation},
              {"max_grid_minus_exact", metrics.max_grid_minus_exact},
              {"dominance_bound", bound},
              {"travel_time_exact", metrics.travel_time_exact},
              {"travel_time_grid", metrics.travel_time_grid},
              {"travel_time_abs_diff", metrics.travel_time_abs_diff}};
}

std::vector<std::pair<double, double>> read_profile_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("profile CSV is empty");

  const auto split = [](const std::string& text) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ss(text);
    while (std::getline(ss, f, ',')) fields.push_back(f);
    return fields;
  };

  const std::vector<std::string> header = split(line);
  int s_col = -1;
  int x_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "s") s_col = static_cast<int>(i);
    if (header[i] == "x") x_col = static_cast<int>(i);
  }
  if (s_col < 0 || x_col < 0)
    throw ParseError("profile CSV header must contain columns 's' and 'x'");

  const auto parse_field = [](const std::string& text, int row) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
      throw ParseError("profile CSV row " + std::to_string(row) +
                       ": not a number: '" + text + "'");
    return v;
  };

  std::vector<std::pair<double, double>> out;
  int row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line);
    if (static_cast<int>(fields.size()) <= std::max(s_col, x_col))
      throw ParseError("profile CSV row " + std::to_string(row) +
                       ": too few fields");
    const double s = parse_field(fields[s_col], row);
    const double xv = parse_field(fields[x_col], row);
    if (!out.empty() && s < out.back().first)
      throw ParseError("profile CSV rows are not sorted by s (row " +
                       std::to_string(row) + ")");
    out.emplace_back(s, xv);
  }
  if (out.size() < 2)
    throw ParseError("profile CSV must contain at least 2 data rows");
  return out;
}

}  // namespace speedprof
