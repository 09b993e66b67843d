// tslv: command-line front end for the competition model on time scales.
//
// Subcommands:
//   classify    print regime and equilibria for a parameter set (JSON)
//   simulate    run a scenario file, write trajectory CSV, report JSON
//   phaseplane  emit nullcline and root-curve plot data (CSV)
//   verify      run a JSON verification suite, report JSON or table
//
// Exit codes: 0 success; 1 configuration error; 2 a simulation budget was
// exceeded; 3 a verification suite reported failures.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tslv/errors.hpp"
#include "tslv/io.hpp"
#include "tslv/model.hpp"
#include "tslv/root_ops.hpp"
#include "tslv/simulate.hpp"
#include "tslv/timescale.hpp"
#include "tslv/verify.hpp"

namespace {

using namespace tslv;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerifyFailed = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Arguments that take structured input accept either inline JSON (anything
// starting with '{') or a path to a file holding it.
std::string text_or_file(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return arg;
  return slurp(arg);
}

// --params accepts inline JSON, a JSON file, or a comma list of key=value
// pairs (keys r, s, alpha, beta, K, L; unset keys stay at 1).
ModelParams parse_params_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') {
    return params_from_json(arg);
  }
  if (arg.find('=') == std::string::npos) {
    return params_from_json(slurp(arg));
  }
  ModelParams p;
  std::istringstream in(arg);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigInvalid("params: expected key=value, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ConfigInvalid("params: bad number in '" + item + "'");
    }
    if (key == "r") p.r = value;
    else if (key == "s") p.s = value;
    else if (key == "alpha") p.alpha = value;
    else if (key == "beta") p.beta = value;
    else if (key == "K") p.K = value;
    else if (key == "L") p.L = value;
    else throw ConfigInvalid("params: unknown key '" + key + "'");
  }
  p.validate();
  return p;
}

std::vector<double> parse_double_list(const std::string& arg, const char* what) {
  std::vector<double> out;
  std::istringstream in(arg);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigInvalid(std::string(what) + ": bad number '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigInvalid(std::string(what) + ": empty list");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigInvalid("cannot write file: " + path);
  out << content;
}

// traj.csv -> traj_2.csv for the third start of a multi-start scenario.
std::string indexed_path(const std::string& path, std::size_t index) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos &&
                       (slash == std::string::npos || dot > slash);
  if (!has_ext) return path + "_" + std::to_string(index);
  return path.substr(0, dot) + "_" + std::to_string(index) + path.substr(dot);
}

int run_classify(const std::string& params_arg) {
  const ModelParams p = parse_params_arg(params_arg);
  std::cout << classification_to_json(p) << "\n";
  return kExitOk;
}

int run_simulate(const std::string& scenario_arg, const std::string& out_csv,
                 double report_tol) {
  const Scenario sc = scenario_from_json(text_or_file(scenario_arg));
  const EquilibriumSet eqs = equilibria(sc.params);
  const bool multi = sc.initial.size() > 1;

  bool exceeded = false;
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < sc.initial.size(); ++i) {
    const Trajectory traj =
        simulate(sc.params, sc.scale, sc.t0, sc.initial[i], sc.budget, sc.tol);
    exceeded = exceeded || traj.budget_exceeded;

    std::ostringstream csv;
    write_trajectory_csv(csv, traj);
    const std::string path = multi ? indexed_path(out_csv, i) : out_csv;
    write_file(path, csv.str());

    const ConvergenceReport rep = detect_convergence(traj, eqs, report_tol);
    nlohmann::ordered_json row;
    row["start"] = {sc.initial[i].x, sc.initial[i].y};
    row["csv"] = path;
    row["budget_exceeded"] = traj.budget_exceeded;
    row["hit_time_limit"] = traj.hit_time_limit;
    row["convergence"] =
        nlohmann::ordered_json::parse(convergence_report_to_json(rep));
    reports.push_back(std::move(row));
  }
  if (multi) {
    nlohmann::ordered_json top;
    top["reports"] = std::move(reports);
    std::cout << top.dump(2) << "\n";
  } else {
    std::cout << reports[0].dump(2) << "\n";
  }
  return exceeded ? kExitBudget : kExitOk;
}

int run_phaseplane(const std::string& params_arg, const std::string& mu_arg,
                   const std::string& scale_arg, const std::string& times_arg,
                   const std::string& range_arg, int n_samples,
                   const std::string& out_csv) {
  const ModelParams p = parse_params_arg(params_arg);
  if (n_samples < 2) throw ConfigInvalid("phaseplane: need at least 2 samples");
  const bool have_mu = !mu_arg.empty();
  const bool have_scale = !scale_arg.empty() || !times_arg.empty();
  if (have_mu == have_scale) {
    throw ConfigInvalid(
        "phaseplane: give either --mu or --timescale with --times");
  }
  if (!scale_arg.empty() && times_arg.empty()) {
    throw ConfigInvalid("phaseplane: --timescale needs --times");
  }

  double xlo = 0.0, xhi = p.K;
  if (!range_arg.empty()) {
    const auto colon = range_arg.find(':');
    if (colon == std::string::npos) {
      throw ConfigInvalid("phaseplane: --x-range must be lo:hi");
    }
    try {
      xlo = std::stod(range_arg.substr(0, colon));
      xhi = std::stod(range_arg.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigInvalid("phaseplane: bad --x-range numbers");
    }
    if (!(xhi > xlo)) throw ConfigInvalid("phaseplane: --x-range needs lo < hi");
  }

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    grid.push_back(xlo + (xhi - xlo) * i / (n_samples - 1));
  }

  // Pairs (mu, t): t is NaN when the graininess was given directly.
  std::vector<std::pair<double, double>> mus;
  if (have_mu) {
    for (double mu : parse_double_list(mu_arg, "mu list")) {
      if (!(mu >= 0.0)) throw ConfigInvalid("phaseplane: mu must be >= 0");
      mus.emplace_back(mu, std::numeric_limits<double>::quiet_NaN());
    }
  } else {
    const TimeScale ts = timescale_from_json(text_or_file(scale_arg));
    for (double t : parse_double_list(times_arg, "time list")) {
      mus.emplace_back(ts.graininess(t), t);
    }
  }

  std::vector<PhasePlaneRow> rows;
  for (Nullcline which : {Nullcline::H, Nullcline::K}) {
    for (double x : grid) {
      PhasePlaneRow row;
      row.nullcline = true;
      row.which = which;
      row.x = x;
      row.y = (which == Nullcline::H) ? nullcline_h(p, x) : nullcline_k(p, x);
      rows.push_back(row);
    }
  }
  for (const auto& [mu, t] : mus) {
    for (Nullcline which : {Nullcline::H, Nullcline::K}) {
      for (const RootCurvePoint& pt : root_curve(p, mu, which, grid)) {
        PhasePlaneRow row;
        row.t = t;
        row.mu = mu;
        row.which = which;
        row.x = pt.x;
        row.y = pt.y;
        rows.push_back(row);
      }
    }
  }

  std::ostringstream csv;
  write_phaseplane_csv(csv, rows);
  if (out_csv.empty()) {
    std::cout << csv.str();
  } else {
    write_file(out_csv, csv.str());
  }
  return kExitOk;
}

int run_verify(const std::string& suite_arg, std::optional<std::uint64_t> seed,
               bool table, const std::string& out_json) {
  const SuiteResult result = run_suite(text_or_file(suite_arg), seed);
  const std::string report = suite_report_json(result);
  if (!out_json.empty()) write_file(out_json, report);
  if (table) {
    std::cout << suite_report_table(result);
  } else {
    std::cout << report << "\n";
  }
  return result.all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-species competition dynamics on time scales: classification, "
      "simulation, phase-plane data, verification"};
  app.require_subcommand(1);

  // Only verify consumes randomness; the flag is accepted everywhere so
  // batch drivers can pass it uniformly. Defaults to 0, never wall-clock.
  std::string params_arg, scenario_arg, out_path, mu_arg, scale_arg, times_arg,
      range_arg, suite_arg;
  std::uint64_t seed = 0;
  double report_tol = 1e-8;
  int n_samples = 200;
  bool table = false;

  CLI::App* classify = app.add_subcommand(
      "classify", "Print regime and equilibria for a parameter set");
  classify->add_option("--params", params_arg,
                       "Inline JSON, JSON file, or k=v list (r,s,alpha,beta,K,L)")
      ->required();
  classify->add_option("--seed", seed, "Accepted for uniformity; unused");

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Run a scenario and write trajectory CSV plus a JSON report");
  simulate_cmd->add_option("--scenario", scenario_arg,
                           "Scenario JSON (inline or file)")
      ->required();
  simulate_cmd->add_option("--out", out_path,
                           "Trajectory CSV path (indexed when the scenario "
                           "has several starts)")
      ->required();
  simulate_cmd->add_option("--tol", report_tol,
                           "Convergence-report tolerance (default 1e-8)");
  simulate_cmd->add_option("--seed", seed, "Accepted for uniformity; unused");

  CLI::App* phaseplane = app.add_subcommand(
      "phaseplane", "Emit nullcline and root-curve rows for plotting");
  phaseplane->add_option("--params", params_arg,
                         "Inline JSON, JSON file, or k=v list")
      ->required();
  phaseplane->add_option("--mu", mu_arg, "Comma list of graininess values");
  phaseplane->add_option("--timescale", scale_arg,
                         "Time-scale JSON (inline or file); use with --times");
  phaseplane->add_option("--times", times_arg,
                         "Comma list of scale points; mu is taken at each");
  phaseplane->add_option("--x-range", range_arg, "Grid range lo:hi (default 0:K)");
  phaseplane->add_option("--n", n_samples, "Grid size (default 200)");
  phaseplane->add_option("--out", out_path, "Output CSV path (default stdout)");
  phaseplane->add_option("--seed", seed, "Accepted for uniformity; unused");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run a JSON verification suite and report the results");
  verify->add_option("--suite", suite_arg, "Suite JSON (inline or file)")
      ->required();
  CLI::Option* seed_opt =
      verify->add_option("--seed", seed, "Override the suite seed");
  verify->add_flag("--table", table, "Print a human-readable table, not JSON");
  verify->add_option("--out", out_path, "Also write the JSON report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify)) {
      return run_classify(params_arg);
    }
    if (app.got_subcommand(simulate_cmd)) {
      return run_simulate(scenario_arg, out_path, report_tol);
    }
    if (app.got_subcommand(phaseplane)) {
      return run_phaseplane(params_arg, mu_arg, scale_arg, times_arg, range_arg,
                            n_samples, out_path);
    }
    if (app.got_subcommand(verify)) {
      return run_verify(suite_arg,
                        seed_opt->count() > 0
                            ? std::optional<std::uint64_t>(seed)
                            : std::nullopt,
                        table, out_path);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
