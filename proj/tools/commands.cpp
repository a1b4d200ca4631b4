#include "commands.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "json_out.hpp"
#include "toric/bridge.hpp"
#include "toric/calabi.hpp"
#include "toric/error.hpp"
#include "toric/polytope.hpp"
#include "toric/radial.hpp"
#include "toric/report.hpp"

namespace toric::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr int kExampleGrid = 50;
constexpr double kProfileMarginFraction = 1e-4;
constexpr double kBridgeSLow = 0.25;
constexpr double kBridgeSHigh = 2.0;

bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::invalid_parameters || kind == ErrorKind::dimension_mismatch ||
         kind == ErrorKind::out_of_range;
}

template <class Body>
CommandOutput guarded(Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {is_input_error(e.kind()) ? kExitInvalid : kExitFailure, "", std::string(e.what()) + "\n"};
  } catch (const std::exception& e) {
    return {kExitFailure, "", std::string("error: ") + e.what() + "\n"};
  }
}

CommandOutput invalid(const std::string& message) { return {kExitInvalid, "", message + "\n"}; }

std::string csv_number(double v) { return std::isfinite(v) ? format_number(v) : "nan"; }

Json coefficients_json(const ExtremalCoefficients& e) {
  return Json{{"A", e.A}, {"B", e.B}, {"C", e.C}, {"D", e.D}};
}

// The Abreu eq. (24) form of h'' for n = 2, b = 1.
double cp2_h_second_reference(double a, double t) {
  return 2 * a * (1 - a) / (2 * a * t * t + t - a * a * t + 2 * a * t + 2 * a * a) - 1.0 / t;
}

}  // namespace

CommandOutput run_derive(const RunConfig& config) {
  if (config.format != "json" && config.format != "csv") return invalid("unknown format: " + config.format);
  return guarded([&]() -> CommandOutput {
    // Validate before solving so bad input never reaches the solver.
    blank_coefficients(config.n, config.a, config.b);
    const ExtremalCoefficients e = solve_coefficients(config.n, config.a, config.b);
    if (config.format == "csv") {
      std::string out = "n,a,b,p,A,B,C,D\n";
      out += std::to_string(e.n);
      for (double v : {e.a, e.b, e.p, e.A, e.B, e.C, e.D}) out += "," + csv_number(v);
      return {kExitPass, out + "\n", ""};
    }
    Json doc{{"schema", kSchemaVersion}, {"n", e.n}, {"a", e.a}, {"b", e.b}, {"p", e.p},
             {"A", e.A},                 {"B", e.B}, {"C", e.C}, {"D", e.D}, {"S", "A*t+B"}};
    return {kExitPass, to_json_text(doc), ""};
  });
}

CommandOutput run_profile(const RunConfig& config) {
  if (config.format != "json" && config.format != "csv") return invalid("unknown format: " + config.format);
  if (config.samples < 1) return invalid("--samples must be >= 1");
  return guarded([&]() -> CommandOutput {
    const ExtremalMetric metric = build_extremal_metric(config.n, config.a, config.b);
    const double width = config.b - config.a;
    const double margin = config.margin > 0.0 ? config.margin : kProfileMarginFraction * width;
    if (!(2.0 * margin < width)) return invalid("--margin leaves no interior grid");

    const double lo = config.a + margin, hi = config.b - margin;
    std::string csv = "t,F_second,h_second,S\n";
    Json rows = Json::array();
    for (int k = 0; k < config.samples; ++k) {
      const double t = config.samples == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (config.samples - 1.0);
      const double f2 = metric.potential.f_second(t);
      const double h2 = h_second(metric.coefficients, t);
      const double s = radial_scalar_curvature(metric.potential, t);
      csv += csv_number(t) + "," + csv_number(f2) + "," + csv_number(h2) + "," + csv_number(s) + "\n";
      rows.push_back(Json{{"t", t}, {"F_second", f2}, {"h_second", h2}, {"S", s}});
    }
    if (config.format == "csv") return {kExitPass, csv, ""};
    Json doc{{"schema", kSchemaVersion}, {"n", config.n}, {"a", config.a},
             {"b", config.b},            {"margin", margin}, {"rows", std::move(rows)}};
    return {kExitPass, to_json_text(doc), ""};
  });
}

CommandOutput run_verify(const RunConfig& config) {
  if (config.format != "json") return invalid("verify only supports --format json");
  return guarded([&]() -> CommandOutput {
    VerifyConfig vc;
    vc.n = config.n;
    vc.a = config.a;
    vc.b = config.b;
    vc.points = config.points;
    vc.seed = config.seed;
    vc.tolerance_hard = config.tolerance_hard;
    vc.tolerance_soft = config.tolerance_soft;
    vc.margin = config.margin;
    vc.step = config.step;
    blank_coefficients(vc.n, vc.a, vc.b);
    const VerificationReport r = run_verification(vc);

    Json checks = Json::array();
    std::string failed;
    for (const auto& c : r.checks) {
      checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                            {"hard", c.hard}, {"pass", c.pass}});
      if (c.hard && !c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
    }
    Json slope = Json::array();
    for (Eigen::Index i = 0; i < r.fit_slope.size(); ++i) slope.push_back(r.fit_slope[i]);

    Json coefficients = coefficients_json(r.coefficients);
    coefficients["reciprocal_condition"] = r.coefficients.reciprocal_condition;
    Json doc{
        {"schema", kSchemaVersion},
        {"command", "verify"},
        {"inputs",
         Json{{"n", vc.n},
              {"a", vc.a},
              {"b", vc.b},
              {"points", vc.points},
              {"seed", vc.seed},
              {"margin", r.margin},
              {"prng", std::string(kSamplerPrng)},
              {"tolerance_hard", vc.tolerance_hard},
              {"tolerance_soft", vc.tolerance_soft}}},
        {"coefficients", std::move(coefficients)},
        {"boundary_residuals",
         Json{{"alpha_a", r.boundary.alpha_a},
              {"alpha_prime_a", r.boundary.alpha_prime_a},
              {"alpha_b", r.boundary.alpha_b},
              {"alpha_prime_b", r.boundary.alpha_prime_b}}},
        {"closed_form",
         Json{{"max_delta", r.closed_form_delta}, {"as_printed_max_delta", r.as_printed_closed_form_delta}}},
        {"extremality",
         Json{{"slope", std::move(slope)}, {"intercept", r.fit_intercept}, {"residual", r.extremality_residual}}},
        {"curvature",
         Json{{"radial_vs_general", r.radial_general_discrepancy},
              {"general_vs_affine", r.general_expected_discrepancy},
              {"radial_vs_affine", r.radial_expected_discrepancy}}},
        {"validity", Json{{"min_1_plus_tF2", r.validity.min_value}, {"argmin", r.validity.argmin}}},
        {"h_second_endpoints",
         Json{{"near_a", r.h_second_near_a},
              {"near_b", r.h_second_near_b},
              {"halving_change", r.endpoint_halving_change}}},
        {"checks", std::move(checks)},
        {"warnings", r.warnings},
        {"pass", r.pass()}};

    CommandOutput output{r.pass() ? kExitPass : kExitFailure, to_json_text(doc), ""};
    for (const auto& w : r.warnings) output.err += "warning: " + w + "\n";
    if (!r.pass()) output.err += "verification failed: " + failed + "\n";
    return output;
  });
}

CommandOutput run_bridge_check(const RunConfig& config) {
  if (config.format != "json") return invalid("bridge-check only supports --format json");
  if (config.samples < 1) return invalid("--samples must be >= 1");
  if (config.preset == "extremal") {
    Json doc{{"schema", kSchemaVersion},
             {"preset", config.preset},
             {"supported", false},
             {"reason", "no Kahler potential is available for the extremal metric"}};
    return {kExitInvalid, to_json_text(doc), "bridge-check: preset 'extremal' is unsupported\n"};
  }
  return guarded([&]() -> CommandOutput {
    const auto potential = kahler_preset(config.preset, config.n);
    if (!potential) return invalid("unknown preset: " + config.preset);

    std::vector<double> s_samples;
    for (int k = 0; k < config.samples; ++k) {
      const double frac = config.samples == 1 ? 0.5 : static_cast<double>(k) / (config.samples - 1);
      s_samples.push_back(kBridgeSLow * std::pow(kBridgeSHigh / kBridgeSLow, frac));
    }
    const BridgeReport report = bridge_cross_check(*potential, s_samples);

    Json samples = Json::array();
    double scale = 1.0;
    for (const auto& s : report.samples) {
      samples.push_back(Json{{"s", s.s}, {"t", s.t}, {"calabi", s.calabi}, {"radial", s.radial},
                             {"discrepancy", s.discrepancy}});
      scale = std::max(scale, std::abs(s.calabi));
    }
    const double tolerance = config.tolerance_soft * scale;
    const bool pass = report.max_discrepancy <= tolerance;
    Json doc{{"schema", kSchemaVersion},     {"preset", config.preset},
             {"n", config.n},                {"supported", true},
             {"samples", std::move(samples)}, {"max_discrepancy", report.max_discrepancy},
             {"tolerance", tolerance},       {"pass", pass}};
    return {pass ? kExitPass : kExitFailure, to_json_text(doc), pass ? "" : "bridge-check: discrepancy too large\n"};
  });
}

CommandOutput run_example(const RunConfig& config) {
  if (config.format != "json") return invalid("example only supports --format json");
  return guarded([&]() -> CommandOutput {
    const double a = config.a;
    const ExtremalCoefficients solved = solve_coefficients(2, a, 1.0);
    const ExtremalCoefficients example = cp2_example_coefficients(a);
    const double coefficient_diff = coefficient_delta(example, solved);

    const double t_mid = 0.5 * (a + 1.0);
    const double h_mid = h_second(solved, t_mid);
    const double h_ref = cp2_h_second_reference(a, t_mid);
    double grid_diff = 0.0;
    for (int k = 0; k < kExampleGrid; ++k) {
      const double t = a + (1.0 - a) * (k + 0.5) / kExampleGrid;
      const double ref = cp2_h_second_reference(a, t);
      grid_diff = std::max(grid_diff, std::abs(h_second(solved, t) - ref) / std::max(std::abs(ref), 1e-300));
    }
    const double tol = config.tolerance_hard;
    const bool pass = coefficient_diff <= tol && grid_diff <= tol;

    Json doc{{"schema", kSchemaVersion},
             {"n", 2},
             {"a", a},
             {"b", 1.0},
             {"coefficients",
              Json{{"solved", coefficients_json(solved)},
                   {"example_closed_form", coefficients_json(example)},
                   {"max_relative_difference", coefficient_diff}}},
             {"h_second",
              Json{{"t", t_mid},
                   {"from_coefficients", h_mid},
                   {"abreu_eq24", h_ref},
                   {"grid_points", kExampleGrid},
                   {"grid_max_relative_difference", grid_diff}}},
             {"tolerance", tol},
             {"pass", pass}};
    return {pass ? kExitPass : kExitFailure, to_json_text(doc), pass ? "" : "example: mismatch\n"};
  });
}

CommandOutput run_command(const RunConfig& config) {
  if (config.command == "derive") return run_derive(config);
  if (config.command == "profile") return run_profile(config);
  if (config.command == "verify") return run_verify(config);
  if (config.command == "bridge-check") return run_bridge_check(config);
  if (config.command == "example") return run_example(config);
  return invalid("unknown command: " + config.command);
}

CommandOutput run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Calabi extremal metrics on the blow-up of CP^n from moment-polytope data"};
  app.require_subcommand(1);
  RunConfig config;

  const auto add_common = [&config](CLI::App* sub) {
    sub->add_option("--n", config.n, "complex dimension n >= 1");
    sub->add_option("--a", config.a, "inner facet level, 0 < a < b");
    sub->add_option("--b", config.b, "outer facet level");
    sub->add_option("--points", config.points, "interior sample points (verify)");
    sub->add_option("--samples", config.samples, "grid size (profile, bridge-check)");
    sub->add_option("--seed", config.seed, "sampler seed");
    sub->add_option("--step", config.step, "finite-difference step override");
    sub->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tolerance-hard", config.tolerance_hard, "identity / linear-algebra tolerance");
    sub->add_option("--tolerance-soft", config.tolerance_soft, "finite-difference curvature tolerance");
    sub->add_option("--preset", config.preset, "bridge preset: flat or fubini-study");
    sub->add_option("--margin", config.margin, "distance kept from the boundary");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"derive", "solve the boundary system for A, B, C, D"},
      {"profile", "tabulate F'', h'' and S over (a, b)"},
      {"verify", "run the curvature cross-check battery"},
      {"bridge-check", "compare Calabi's formula with the radial formula on a preset"},
      {"example", "reproduce the n = 2, b = 1 closed forms at a given a"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {kExitPass, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    std::ostringstream err;
    err << e.what() << "\n";
    return {kExitInvalid, "", err.str()};
  }
  for (const auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
  }
  return run_command(config);
}

}  // namespace toric::cli
