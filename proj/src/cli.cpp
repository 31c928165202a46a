#include "tsallis/cli.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "tsallis/detail/parallel.hpp"
#include "tsallis/error.hpp"
#include "tsallis/functionals.hpp"
#include "tsallis/oracle.hpp"
#include "tsallis/solver.hpp"
#include "tsallis/spectrum_io.hpp"

namespace tsallis::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CommonFlags {
  std::string input;
  double q = 0.0;
  double beta = 0.0;
};

struct SolveFlags {
  CommonFlags common;
  SolveOptions opts;
  bool no_regime_check = false;
};

struct CheckFlags {
  CommonFlags common;
  bool json = false;
};

struct SweepFlags {
  std::string input;
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::optional<double> q;
  std::optional<double> beta;
};

struct CompareFlags {
  CommonFlags common;
  double resolution = 0.005;
};

void emit_error(std::ostream& err, std::string_view kind, std::string_view message,
                const Json& extra = Json::object()) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  for (const auto& [k, v] : extra.items()) j[k] = v;
  err << j.dump() << '\n';
}

int emit_library_error(std::ostream& err, const Error& e) {
  emit_error(err, to_string(e.code()), e.what());
  switch (e.code()) {
    case ErrorCode::RegimeViolation:
    case ErrorCode::BracketViolation:
    case ErrorCode::AllWeightsZero:
      return kRegimeViolation;
    default:
      return kInputError;
  }
}

Json regime_json(const RegimeReport& r) {
  Json j;
  j["branch"] = to_string(r.branch);
  j["condition_value"] = r.condition_value;
  j["satisfied"] = r.satisfied;
  return j;
}

int regime_violation(std::ostream& err, const RegimeReport& r) {
  const char* which = r.branch == RegimeBranch::QAboveOne
                          ? "1 - beta(q-1)(E_max-E_min)n^(q-1) > 0"
                          : "1 + beta(1-q)(E_min-E_max) > 0";
  Json extra;
  extra["branch"] = to_string(r.branch);
  extra["condition"] = which;
  extra["condition_value"] = r.condition_value;
  emit_error(err, "RegimeViolation",
             fmt::format("regime condition {} fails: condition_value {}", which, r.condition_value), extra);
  return kRegimeViolation;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--input", f.input, "Spectrum file (JSON or one energy per line)")->required();
  cmd->add_option("--q", f.q, "Entropic index q > 0")->required();
  cmd->add_option("--beta", f.beta, "Inverse temperature beta >= 0")->required();
}

int cmd_solve(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  const Spectrum s = parse_spectrum(flags.common.input);
  const Parameters params = make_parameters(flags.common.q, flags.common.beta);
  SolveOptions opts = flags.opts;
  opts.enforce_regime = !flags.no_regime_check;
  opts.validate();

  const RegimeReport regime = check_regime(s, params);
  if (opts.enforce_regime && !regime.satisfied) return regime_violation(err, regime);

  const SolveReport r = solve(s, params, opts);
  Json j;
  j["probabilities"] = r.solution.values();
  j["s_q"] = r.thermo.s_q;
  j["u_q"] = r.thermo.u_q;
  j["f"] = r.thermo.f;
  j["z_q"] = r.thermo.z_q;
  j["z_hat"] = r.thermo.z_hat ? Json(*r.thermo.z_hat) : Json(nullptr);
  j["iterations"] = r.iterations;
  j["update_norm"] = r.update_norm;
  j["residual"] = r.residual;
  j["regime"] = regime_json(r.regime);
  j["converged"] = r.converged;
  out << j.dump() << '\n';
  if (!r.converged) {
    emit_error(err, "NotConverged",
               fmt::format("stopped after {} iterations: step {} residual {}", r.iterations, r.update_norm,
                           r.residual));
    return kNotConverged;
  }
  return kSuccess;
}

std::string instantiated_condition(const Spectrum& s, const Parameters& p, const RegimeReport& r) {
  switch (r.branch) {
    case RegimeBranch::QAboveOne:
      return fmt::format("1 - beta*(q-1)*(E_max-E_min)*n^(q-1) = 1 - {}*({})*({})*{}^({})", p.beta, p.q - 1.0,
                         s.width(), s.size(), p.q - 1.0);
    case RegimeBranch::QBelowOne:
      return fmt::format("1 + beta*(1-q)*(E_min-E_max) = 1 + {}*({})*({})", p.beta, 1.0 - p.q,
                         s.e_min() - s.e_max());
    case RegimeBranch::QNearOne:
      return "|q - 1| < 1e-8: Boltzmann limit, no condition";
    case RegimeBranch::OutOfRegime:
      break;
  }
  return "parameters outside q > 0, beta >= 0";
}

int cmd_check(const CheckFlags& flags, std::ostream& out) {
  const Spectrum s = parse_spectrum(flags.common.input);
  const Parameters params = make_parameters(flags.common.q, flags.common.beta);
  const RegimeReport r = check_regime(s, params);
  if (flags.json) {
    out << regime_json(r).dump() << '\n';
  } else {
    out << "branch " << to_string(r.branch) << '\n'
        << "condition " << instantiated_condition(s, params, r) << '\n'
        << fmt::format("condition_value {} {}", r.condition_value, r.satisfied ? "satisfied" : "violated") << '\n';
  }
  return r.satisfied ? kSuccess : kRegimeViolation;
}

std::string csv_number(double x) { return fmt::format("{:.17g}", x); }

int cmd_sweep(const SweepFlags& flags, std::ostream& out, std::ostream& err) {
  const Spectrum s = parse_spectrum(flags.input);
  const bool over_beta = flags.axis == "beta";
  if (!over_beta && flags.axis != "q") {
    emit_error(err, "InvalidOptions", "--axis must be beta or q");
    return kInputError;
  }
  const auto fixed = over_beta ? flags.q : flags.beta;
  if (!fixed) {
    emit_error(err, "InvalidOptions", over_beta ? "sweep over beta needs --q" : "sweep over q needs --beta");
    return kInputError;
  }
  if (flags.steps < 2 || !(flags.from <= flags.to)) {
    emit_error(err, "InvalidOptions", "sweep needs --steps >= 2 and --from <= --to");
    return kInputError;
  }
  std::vector<double> grid(static_cast<std::size_t>(flags.steps));
  for (int i = 0; i < flags.steps; ++i) {
    grid[i] = i + 1 == flags.steps ? flags.to : flags.from + (flags.to - flags.from) * i / (flags.steps - 1);
  }
  // Reject the whole sweep up front if any grid point is inadmissible.
  for (double v : grid) make_parameters(over_beta ? *fixed : v, over_beta ? v : *fixed);

  const std::size_t n = s.size();
  std::vector<std::string> rows(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t i) {
    const Parameters params = over_beta ? Parameters{*fixed, grid[i]} : Parameters{grid[i], *fixed};
    std::string row = csv_number(grid[i]);
    try {
      const SolveReport r = solve(s, params);
      row += r.converged ? ",true" : ",false";
      row += fmt::format(",{},{},{},{},{}", r.iterations, csv_number(r.residual), csv_number(r.thermo.s_q),
                         csv_number(r.thermo.u_q), csv_number(r.thermo.f));
      for (double p : r.solution.probs()) row += "," + csv_number(p);
    } catch (const Error&) {
      row += ",false";
      row.append(5 + n, ',');
    }
    rows[i] = std::move(row);
  });

  out << "axis_value,converged,iterations,residual,s_q,u_q,f";
  for (std::size_t i = 1; i <= n; ++i) out << ",p_" << i;
  out << '\n';
  for (const auto& row : rows) out << row << '\n';
  return kSuccess;
}

int cmd_compare(const CompareFlags& flags, std::ostream& out, std::ostream& err) {
  const Spectrum s = parse_spectrum(flags.common.input);
  const Parameters params = make_parameters(flags.common.q, flags.common.beta);
  if (s.size() > kGridSearchMaxDimension) {
    throw Error(ErrorCode::DimensionTooLarge,
                fmt::format("grid oracle supports at most {} levels, got {}", kGridSearchMaxDimension, s.size()));
  }
  const RegimeReport regime = check_regime(s, params);
  if (!regime.satisfied) return regime_violation(err, regime);

  const SolveReport solved = solve(s, params);
  const AscentResult oracle = oracle_maximize(s, params, flags.resolution);
  const double distance = sup_distance(solved.solution.probs(), oracle.point.probs());

  Json j;
  j["solver_point"] = solved.solution.values();
  j["oracle_point"] = oracle.point.values();
  j["sup_distance"] = distance;
  j["solver_residual"] = solved.solution.strictly_interior()
                             ? Json(stationarity_residual(solved.solution, s, params))
                             : Json(nullptr);
  j["oracle_residual"] = oracle.residual;
  j["solver_self_consistency"] = solved.residual;
  j["solver_converged"] = solved.converged;
  j["oracle_converged"] = oracle.converged;
  out << j.dump() << '\n';
  if (distance < 1e-4) return kSuccess;
  emit_error(err, "NotConverged", fmt::format("solver and oracle disagree by {}", distance));
  return kNotConverged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium distributions of Tsallis statistics at fixed temperature", "tsallis"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the self-consistent Gibbs-type equation");
  add_common(solve_cmd, solve_flags.common);
  solve_cmd->add_option("--tol", solve_flags.opts.tol, "Sup-norm step tolerance");
  solve_cmd->add_option("--max-iter", solve_flags.opts.max_iter, "Iteration limit");
  solve_cmd->add_option("--damping", solve_flags.opts.damping, "Damping factor in (0, 1]");
  solve_cmd->add_flag("--no-regime-check", solve_flags.no_regime_check, "Run even if the regime condition fails");
  solve_cmd->add_flag("--cutoff", solve_flags.opts.cutoff_mode, "Zero the weight of bracket-violating levels (q > 1)");

  CheckFlags check_flags;
  auto* check_cmd = app.add_subcommand("check", "Evaluate the existence/positivity regime condition");
  add_common(check_cmd, check_flags.common);
  check_cmd->add_flag("--json", check_flags.json, "Print a JSON object instead of text");

  SweepFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve over a grid of beta or q values, CSV output");
  sweep_cmd->add_option("--input", sweep_flags.input, "Spectrum file")->required();
  sweep_cmd->add_option("--axis", sweep_flags.axis, "beta or q")->required();
  sweep_cmd->add_option("--from", sweep_flags.from, "First axis value")->required();
  sweep_cmd->add_option("--to", sweep_flags.to, "Last axis value")->required();
  sweep_cmd->add_option("--steps", sweep_flags.steps, "Number of grid points (>= 2)")->required();
  sweep_cmd->add_option("--q", sweep_flags.q, "Fixed q for a beta sweep");
  sweep_cmd->add_option("--beta", sweep_flags.beta, "Fixed beta for a q sweep");

  CompareFlags compare_flags;
  auto* compare_cmd = app.add_subcommand("compare", "Compare the solver with the grid + ascent oracle");
  add_common(compare_cmd, compare_flags.common);
  compare_cmd->add_option("--resolution", compare_flags.resolution, "Grid spacing for the oracle");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("tsallis");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    emit_error(err, "UsageError", e.what());
    return kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_flags, out, err);
    if (*check_cmd) return cmd_check(check_flags, out);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, out, err);
    if (*compare_cmd) return cmd_compare(compare_flags, out, err);
  } catch (const Error& e) {
    return emit_library_error(err, e);
  }
  return kInputError;
}

}  // namespace tsallis::cli
