#include "tslv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>

#include "tslv/errors.hpp"
#include "tslv/root_ops.hpp"
#include "json_detail.hpp"

namespace tslv {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Sampling box for random states: twice the largest equilibrium/nullcline
// extent in each coordinate.
double box_x(const ModelParams& p) { return 2.0 * std::max(p.K, 1.0 / p.beta); }
double box_y(const ModelParams& p) { return 2.0 * std::max(p.L, 1.0 / p.alpha); }

// Canonical base point of a scale for convergence runs.
double default_t0(const TimeScale& ts) {
  switch (ts.kind()) {
    case TimeScale::Kind::Reals: return 0.0;
    case TimeScale::Kind::Lattice: return ts.lattice_origin();
    case TimeScale::Kind::Quantum: return ts.quantum_start();
    case TimeScale::Kind::Pattern: return ts.min_point();
  }
  return 0.0;
}

void note_violation(CheckReport* rep, const std::string& msg) {
  ++rep->violations;
  if (rep->detail.empty()) rep->detail = msg;
}

void observe_margin(CheckReport* rep, double margin) {
  if (margin < rep->worst_margin) rep->worst_margin = margin;
}

std::string state_str(const State& s) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << s.x << ", " << s.y << ")";
  return os.str();
}

CheckReport sign_lemmas_impl(const ModelParams& p, long long n_samples,
                             const std::vector<double>& mu_set, Rng rng,
                             const OperatorFn& lh, const OperatorFn& lk,
                             const std::string& check_id) {
  const auto started = Clock::now();
  p.validate();
  if (n_samples <= 0) throw ConfigInvalid("sign_lemmas: n_samples must be positive");
  if (mu_set.empty()) throw ConfigInvalid("sign_lemmas: mu_set is empty");
  for (double mu : mu_set) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw ConfigInvalid("sign_lemmas: graininess values must be finite and >= 0");
    }
  }
  CheckReport rep;
  rep.check_id = check_id;
  const std::vector<SignClaim> claims = sign_lemma_table(p);
  const double bx = box_x(p), by = box_y(p);
  for (const SignClaim& claim : claims) {
    long long accepted = 0;
    long long attempts = 0;
    const long long cap = n_samples * 10000LL;
    while (accepted < n_samples) {
      if (++attempts > cap) {
        throw ConfigInvalid("sign_lemmas: region of claim " + claim.id +
                            " starved the sampler");
      }
      const State s{rng.uniform(0.0, bx), rng.uniform(0.0, by)};
      if (!claim.contains(s, kSignMargin)) continue;
      ++accepted;
      for (double mu : mu_set) {
        const double v =
            (claim.op == Nullcline::H) ? lh(p, mu, s) : lk(p, mu, s);
        const double margin = claim.sign * v;
        ++rep.samples;
        observe_margin(&rep, margin);
        if (!(margin > 0.0)) {
          std::ostringstream os;
          os.precision(17);
          os << "claim " << claim.id << " at " << state_str(s) << ", mu = " << mu
             << ": value = " << v << " (expected sign "
             << (claim.sign > 0 ? "+" : "-") << ")";
          note_violation(&rep, os.str());
        }
      }
    }
  }
  rep.elapsed_seconds = seconds_since(started);
  rep.pass = rep.violations == 0;
  return rep;
}

// Boundary arcs of an invariant region, each parameterized over u in [0, 1).
std::vector<std::function<State(double)>> region_arcs(const ModelParams& p,
                                                      InvariantRegion region) {
  const Regime g = classify_regime(p);
  auto h = [p](double x) { return nullcline_h(p, x); };
  auto k = [p](double x) { return nullcline_k(p, x); };
  const double m = 1e-7;
  std::vector<std::function<State(double)>> arcs;

  auto curve_arc = [m](double xlo, double xhi, std::function<double(double)> f) {
    return [=](double u) {
      const double x = xlo + m + u * (xhi - xlo - 2.0 * m);
      return State{x, std::max(0.0, f(x))};
    };
  };
  auto edge_arc = [](double x, double ylo, double yhi) {
    return [=](double u) { return State{x, ylo + u * (yhi - ylo)}; };
  };

  switch (region) {
    case InvariantRegion::Omega2: {
      const bool ywins = (g == Regime::ExclusionYWins);
      auto lower = ywins ? std::function<double(double)>(h)
                         : std::function<double(double)>(k);
      auto upper = ywins ? std::function<double(double)>(k)
                         : std::function<double(double)>(h);
      const double x_end = ywins ? 1.0 / p.beta : p.K;  // zero of the upper curve
      arcs.push_back(curve_arc(0.0, x_end, lower));
      arcs.push_back(curve_arc(0.0, x_end, upper));
      arcs.push_back(edge_arc(0.0, lower(0.0), upper(0.0)));
      break;
    }
    case InvariantRegion::R2T: {
      const EquilibriumSet eq = equilibria(p);
      arcs.push_back(curve_arc(0.0, eq.Estar->x, h));
      arcs.push_back(curve_arc(0.0, eq.Estar->x, k));
      arcs.push_back(edge_arc(0.0, h(0.0), k(0.0)));
      break;
    }
    case InvariantRegion::R5T: {
      const EquilibriumSet eq = equilibria(p);
      arcs.push_back(curve_arc(eq.Estar->x, p.K, k));  // floor: max(0, k)
      arcs.push_back(curve_arc(eq.Estar->x, p.K, h));
      break;
    }
    case InvariantRegion::S2T: {
      const EquilibriumSet eq = equilibria(p);
      arcs.push_back(curve_arc(0.0, eq.Estar->x, k));
      arcs.push_back(curve_arc(0.0, eq.Estar->x, h));
      arcs.push_back(edge_arc(0.0, k(0.0), h(0.0)));
      break;
    }
    case InvariantRegion::S5T: {
      const EquilibriumSet eq = equilibria(p);
      arcs.push_back(curve_arc(eq.Estar->x, 1.0 / p.beta, h));  // floor: max(0, h)
      arcs.push_back(curve_arc(eq.Estar->x, 1.0 / p.beta, k));
      break;
    }
  }
  return arcs;
}

// Discrete-scale walk with an injected step function (mutation hook).
std::vector<State> walk_with_step(const ModelParams& p, const TimeScale& ts,
                                  double t0, const State& s0,
                                  const SimBudget& budget, const StepFn& step) {
  if (!budget.horizon && !budget.max_steps) {
    throw ConfigInvalid("walk: budget needs a horizon or max_steps");
  }
  std::vector<State> out{s0};
  double t = t0;
  State s = s0;
  long long steps = 0;
  const double H = budget.horizon ? *budget.horizon
                                  : std::numeric_limits<double>::infinity();
  while (!(t >= H - membership_tol(H))) {  // negation keeps an infinite H looping
    if (budget.max_steps && steps >= *budget.max_steps) break;
    const ScaleStep st = ts.next_step(t);
    if (st.dense) {
      throw ConfigInvalid("walk: step-function override needs a purely discrete scale");
    }
    if (st.until > 1e300 || st.until > H + membership_tol(H)) break;
    s = step(p, st.until - t, s);
    ++steps;
    t = st.until;
    out.push_back(s);
  }
  return out;
}

CheckReport invariance_impl(const ModelParams& p, const TimeScale& ts,
                            InvariantRegion region, long long n_starts,
                            const SimBudget& budget, Rng rng,
                            const StepFn& step, const std::string& check_id) {
  const auto started = Clock::now();
  p.validate();
  if (n_starts <= 0) throw ConfigInvalid("invariance: n_starts must be positive");
  const auto defined = invariant_regions_for(p);
  if (std::find(defined.begin(), defined.end(), region) == defined.end()) {
    throw RegimeMismatch(std::string("invariance: region ") +
                         invariant_region_name(region) +
                         " is not defined in regime " +
                         regime_name(classify_regime(p)));
  }
  CheckReport rep;
  rep.check_id = check_id;
  const auto arcs = region_arcs(p, region);
  const double bx = box_x(p), by = box_y(p);
  const double t0 = default_t0(ts);
  const double tol = kRegionBoundaryTol;

  for (long long i = 0; i < n_starts; ++i) {
    State start;
    if (i % 3 == 2 && !arcs.empty()) {
      start = arcs[static_cast<std::size_t>(i / 3) % arcs.size()](rng.uniform01());
    } else {
      long long attempts = 0;
      while (true) {
        if (++attempts > 1000000) {
          throw ConfigInvalid("invariance: interior sampler starved");
        }
        const State cand{rng.uniform(0.0, bx), rng.uniform(0.0, by)};
        if (invariant_region_depth(p, region, cand) >= 0.0) {
          start = cand;
          break;
        }
      }
    }

    std::vector<State> states;
    if (step) {
      states = walk_with_step(p, ts, t0, start, budget, step);
    } else {
      const Trajectory traj = simulate(p, ts, t0, start, budget, 1e-12);
      states.reserve(traj.samples.size());
      for (const TrajectorySample& smp : traj.samples) states.push_back(smp.state);
    }
    for (const State& st : states) {
      const double depth = invariant_region_depth(p, region, st);
      ++rep.samples;
      observe_margin(&rep, depth + tol);
      if (depth < -tol) {
        std::ostringstream os;
        os.precision(17);
        os << invariant_region_name(region) << " exited from start "
           << state_str(start) << " at state " << state_str(st)
           << " (depth " << depth << ")";
        note_violation(&rep, os.str());
      }
    }
  }
  rep.elapsed_seconds = seconds_since(started);
  rep.pass = rep.violations == 0;
  return rep;
}

CheckReport convergence_impl(const ModelParams& p, const TimeScale& ts,
                             long long n_starts, const SimBudget& budget,
                             double tol, Rng rng, const StepFn& step,
                             const std::string& check_id) {
  const auto started = Clock::now();
  p.validate();
  if (n_starts <= 0) throw ConfigInvalid("global_convergence: n_starts must be positive");
  if (!(tol > 0.0)) throw ConfigInvalid("global_convergence: tol must be positive");
  const Regime g = classify_regime(p);
  const EquilibriumSet eqs = equilibria(p);

  // Regime-predicted limit: empty name means "any equilibrium except E0"
  // (bistable) or "a point of the line" (degenerate).
  std::string predicted;
  switch (g) {
    case Regime::ExclusionYWins: predicted = "EL"; break;
    case Regime::ExclusionXWins: predicted = "EK"; break;
    case Regime::Coexistence: predicted = "Estar"; break;
    case Regime::Bistable:
    case Regime::DegenerateLine: predicted = ""; break;
    case Regime::MixedBoundary: {
      const double u = p.alpha * p.L - 1.0;
      const double v = p.beta * p.K - 1.0;
      predicted = (u >= -kRegimeTol && v <= kRegimeTol) ? "EL" : "EK";
      break;
    }
  }

  CheckReport rep;
  rep.check_id = check_id;
  const double bx = box_x(p), by = box_y(p);
  const double t0 = default_t0(ts);

  for (long long i = 0; i < n_starts; ++i) {
    const State start{rng.uniform(1e-6, bx), rng.uniform(1e-6, by)};
    Trajectory traj{p, ts, {}, false, false};
    if (step) {
      const auto states = walk_with_step(p, ts, t0, start, budget, step);
      double t = t0;
      for (const State& st : states) {
        traj.samples.push_back({t, st, ts.graininess(t), StepMode::Recursion});
        t = ts.sigma(t);
      }
    } else {
      traj = simulate(p, ts, t0, start, budget);
    }
    const ConvergenceReport cr = detect_convergence(traj, eqs, tol, 10);
    ++rep.samples;

    bool ok = cr.converged;
    if (ok) {
      if (g == Regime::Bistable) {
        ok = (cr.target == "EK" || cr.target == "EL" || cr.target == "Estar");
      } else if (g == Regime::DegenerateLine) {
        ok = cr.target.rfind("line point", 0) == 0;
      } else {
        ok = (cr.target == predicted);
      }
    }
    if (ok) {
      observe_margin(&rep, tol - cr.final_distance);
    } else if (!cr.converged) {
      observe_margin(&rep, -1.0);
      std::ostringstream os;
      os.precision(17);
      os << "start " << state_str(start) << " did not converge within budget ("
         << traj.samples.size() << " samples, final "
         << state_str(traj.samples.back().state) << ")";
      note_violation(&rep, os.str());
    } else {
      observe_margin(&rep, -1.0);
      std::ostringstream os;
      os << "start " << state_str(start) << " converged to " << cr.target
         << " instead of " << (predicted.empty() ? "the predicted set" : predicted);
      note_violation(&rep, os.str());
    }
  }
  rep.elapsed_seconds = seconds_since(started);
  rep.pass = rep.violations == 0;
  return rep;
}

CheckReport box_exclusion_impl(const ModelParams& p, long long n_samples,
                               const std::vector<double>& mu_set, Rng rng,
                               const StepFn& step, const std::string& check_id) {
  const auto started = Clock::now();
  p.validate();
  if (n_samples <= 0) throw ConfigInvalid("box_exclusion: n_samples must be positive");
  if (mu_set.empty()) throw ConfigInvalid("box_exclusion: mu_set is empty");
  const Regime g = classify_regime(p);
  if (g != Regime::Bistable && g != Regime::Coexistence) {
    throw RegimeMismatch("box_exclusion: needs a regime with feasible Estar");
  }
  const EquilibriumSet eq = equilibria(p);
  const double xs = eq.Estar->x;
  const double ys = eq.Estar->y;
  const double tol = 1e-12;

  CheckReport rep;
  rep.check_id = check_id;
  for (long long i = 0; i < n_samples; ++i) {
    State s;
    long long attempts = 0;
    while (true) {
      if (++attempts > 10000) {
        throw ConfigInvalid("box_exclusion: sampling box degenerate around Estar");
      }
      s = {rng.uniform(0.0, xs), rng.uniform(0.0, ys)};
      if (std::max(std::abs(s.x - xs), std::abs(s.y - ys)) > kSignMargin) break;
    }
    for (double mu : mu_set) {
      const State n = step(p, mu, s);
      const double margin = std::max(xs + tol - n.x, ys + tol - n.y);
      ++rep.samples;
      observe_margin(&rep, margin);
      if (margin < 0.0) {
        std::ostringstream os;
        os.precision(17);
        os << "image of " << state_str(s) << " at mu = " << mu << " lands in the "
           << "open box beyond Estar: " << state_str(n);
        note_violation(&rep, os.str());
      }
    }
  }
  rep.elapsed_seconds = seconds_since(started);
  rep.pass = rep.violations == 0;
  return rep;
}

OperatorFn default_lh() {
  return [](const ModelParams& p, double mu, const State& s) {
    return eval_Lh(p, mu, s).value;
  };
}

OperatorFn default_lk() {
  return [](const ModelParams& p, double mu, const State& s) {
    return eval_Lk(p, mu, s).value;
  };
}

StepFn default_step() {
  return [](const ModelParams& p, double mu, const State& s) {
    return step_map(p, mu, s);
  };
}

}  // namespace

Rng::Rng(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a offset basis
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ull;  // FNV prime
  }
  gen_.seed(seed ^ h);
}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

CheckReport check_sign_lemmas(const ModelParams& p, long long n_samples,
                              const std::vector<double>& mu_set,
                              std::uint64_t seed) {
  return sign_lemmas_impl(p, n_samples, mu_set, Rng(seed, "sign_lemmas"),
                          default_lh(), default_lk(), "sign_lemmas");
}

CheckReport check_sign_lemmas(const ModelParams& p, long long n_samples,
                              const std::vector<double>& mu_set,
                              std::uint64_t seed, const OperatorFn& lh,
                              const OperatorFn& lk) {
  return sign_lemmas_impl(p, n_samples, mu_set, Rng(seed, "sign_lemmas"), lh, lk,
                          "sign_lemmas");
}

CheckReport check_invariance(const ModelParams& p, const TimeScale& ts,
                             InvariantRegion region, long long n_starts,
                             const SimBudget& budget, std::uint64_t seed) {
  return invariance_impl(p, ts, region, n_starts, budget,
                         Rng(seed, "invariance"), StepFn{}, "invariance");
}

CheckReport check_invariance(const ModelParams& p, const TimeScale& ts,
                             InvariantRegion region, long long n_starts,
                             const SimBudget& budget, std::uint64_t seed,
                             const StepFn& step) {
  return invariance_impl(p, ts, region, n_starts, budget,
                         Rng(seed, "invariance"), step, "invariance");
}

CheckReport check_global_convergence(const ModelParams& p, const TimeScale& ts,
                                     long long n_starts, const SimBudget& budget,
                                     double tol, std::uint64_t seed) {
  return convergence_impl(p, ts, n_starts, budget, tol,
                          Rng(seed, "global_convergence"), StepFn{},
                          "global_convergence");
}

CheckReport check_global_convergence(const ModelParams& p, const TimeScale& ts,
                                     long long n_starts, const SimBudget& budget,
                                     double tol, std::uint64_t seed,
                                     const StepFn& step) {
  return convergence_impl(p, ts, n_starts, budget, tol,
                          Rng(seed, "global_convergence"), step,
                          "global_convergence");
}

CheckReport check_box_exclusion(const ModelParams& p, long long n_samples,
                                const std::vector<double>& mu_set,
                                std::uint64_t seed) {
  return box_exclusion_impl(p, n_samples, mu_set, Rng(seed, "box_exclusion"),
                            default_step(), "box_exclusion");
}

CheckReport check_box_exclusion(const ModelParams& p, long long n_samples,
                                const std::vector<double>& mu_set,
                                std::uint64_t seed, const StepFn& step) {
  return box_exclusion_impl(p, n_samples, mu_set, Rng(seed, "box_exclusion"),
                            step, "box_exclusion");
}

SuiteResult run_suite(const std::string& config_json,
                      std::optional<std::uint64_t> seed_override) {
  const detail::json cfg = detail::parse_or_throw(config_json, "suite");
  if (!cfg.is_object()) throw ConfigInvalid("suite: expected an object");
  std::uint64_t seed = 0;
  try {
    seed = cfg.value("seed", 0ull);
    if (seed_override) seed = *seed_override;

    SuiteResult result;
    if (!cfg.contains("checks")) return result;
    const detail::json& checks = cfg.at("checks");
    if (!checks.is_array()) throw ConfigInvalid("suite: checks must be an array");

    std::size_t idx = 0;
    for (const detail::json& row : checks) {
      if (!row.is_object()) throw ConfigInvalid("suite: each check must be an object");
      const std::string id = row.at("check_id").get<std::string>();
      const std::string label =
          row.value("label", id + "[" + std::to_string(idx) + "]");
      const ModelParams p = detail::params_from_jobj(row.at("params"));
      Rng rng(seed, label);

      CheckReport rep;
      if (id == "sign_lemmas") {
        const long long n = row.value("n_samples", 10000LL);
        const std::vector<double> mu_set = row.value(
            "mu_set", std::vector<double>{0.0, 0.01, 0.5, 1.0, 10.0, 1000.0});
        rep = sign_lemmas_impl(p, n, mu_set, std::move(rng), default_lh(),
                               default_lk(), label);
      } else if (id == "invariance") {
        const TimeScale ts = detail::timescale_from_jobj(row.at("timescale"));
        const std::string rname = row.at("region").get<std::string>();
        std::optional<InvariantRegion> region;
        for (InvariantRegion cand :
             {InvariantRegion::Omega2, InvariantRegion::R2T, InvariantRegion::R5T,
              InvariantRegion::S2T, InvariantRegion::S5T}) {
          if (rname == invariant_region_name(cand)) region = cand;
        }
        if (!region) throw ConfigInvalid("suite: unknown region '" + rname + "'");
        const long long n = row.value("n_starts", 1000LL);
        SimBudget budget{{}, 400};
        if (row.contains("budget")) budget = detail::budget_from_jobj(row.at("budget"));
        rep = invariance_impl(p, ts, *region, n, budget, std::move(rng), StepFn{},
                              label);
      } else if (id == "global_convergence") {
        const TimeScale ts = detail::timescale_from_jobj(row.at("timescale"));
        const long long n = row.value("n_starts", 100LL);
        const double tol = row.value("tol", 1e-6);
        SimBudget budget{{}, 10000};
        if (row.contains("budget")) budget = detail::budget_from_jobj(row.at("budget"));
        rep = convergence_impl(p, ts, n, budget, tol, std::move(rng), StepFn{},
                               label);
      } else if (id == "box_exclusion") {
        const long long n = row.value("n_samples", 10000LL);
        const std::vector<double> mu_set =
            row.value("mu_set", std::vector<double>{0.1, 1.0, 10.0});
        rep = box_exclusion_impl(p, n, mu_set, std::move(rng), default_step(),
                                 label);
      } else {
        throw ConfigInvalid("suite: unknown check_id '" + id + "'");
      }
      result.all_pass = result.all_pass && rep.pass;
      result.reports.push_back(std::move(rep));
      ++idx;
    }
    return result;
  } catch (const detail::json::exception& e) {
    throw ConfigInvalid(std::string("suite: ") + e.what());
  }
}

std::string suite_report_json(const SuiteResult& result) {
  detail::ojson j;
  j["all_pass"] = result.all_pass;
  detail::ojson arr = detail::ojson::array();
  for (const CheckReport& r : result.reports) {
    detail::ojson row;
    row["check_id"] = r.check_id;
    row["samples"] = r.samples;
    row["violations"] = r.violations;
    if (std::isfinite(r.worst_margin)) {
      row["worst_margin"] = r.worst_margin;
    } else {
      row["worst_margin"] = nullptr;
    }
    row["elapsed_seconds"] = r.elapsed_seconds;
    row["verdict"] = r.pass ? "pass" : "fail";
    row["detail"] = r.detail;
    arr.push_back(std::move(row));
  }
  j["reports"] = std::move(arr);
  return j.dump(2);
}

std::string suite_report_table(const SuiteResult& result) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  std::size_t w = 5;
  for (const CheckReport& r : result.reports) w = std::max(w, r.check_id.size());
  os << std::left << std::setw(static_cast<int>(w + 2)) << "check"
     << std::right << std::setw(10) << "samples" << std::setw(12) << "violations"
     << std::setw(14) << "worst_margin" << std::setw(10) << "elapsed"
     << "  verdict\n";
  for (const CheckReport& r : result.reports) {
    os << std::left << std::setw(static_cast<int>(w + 2)) << r.check_id
       << std::right << std::setw(10) << r.samples << std::setw(12)
       << r.violations;
    std::ostringstream m;
    m.imbue(std::locale::classic());
    m << std::setprecision(3) << std::scientific << r.worst_margin;
    os << std::setw(14) << m.str();
    std::ostringstream e;
    e.imbue(std::locale::classic());
    e << std::fixed << std::setprecision(2) << r.elapsed_seconds << "s";
    os << std::setw(10) << e.str() << "  " << (r.pass ? "pass" : "fail") << "\n";
  }
  os << (result.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return os.str();
}

}  // namespace tslv
