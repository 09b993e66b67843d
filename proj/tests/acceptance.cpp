// Acceptance suite: eleven end-to-end criteria for the release, one printed
// pass/fail line each. Every tolerance is pinned here as a named constant.
// The process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "tslv/exponential.hpp"
#include "tslv/model.hpp"
#include "tslv/regions.hpp"
#include "tslv/root_ops.hpp"
#include "tslv/simulate.hpp"
#include "tslv/timescale.hpp"
#include "tslv/verify.hpp"

namespace {

using namespace tslv;
using Clock = std::chrono::steady_clock;

// ---- pinned tolerances and budgets -----------------------------------------
constexpr double kQuantumEntrySteps = 5;       // band entry step bound
constexpr double kQuantumConvergenceTol = 1e-6;
constexpr long long kQuantumStepBudget = 10000;
constexpr double kQuantumRuntimeLimit = 1.0;   // seconds, all three starts

constexpr long long kSignSamples = 10000;      // per claim, per graininess
constexpr double kSignRuntimeLimit = 30.0;     // seconds, all five regimes

constexpr double kTwoRouteTol = 1e-10;         // floored relative
constexpr double kInterpolationTol = 1e-10;    // floored relative
constexpr long long kTwoRouteInputs = 10000;

constexpr double kLogisticLatticeTol = 1e-9;   // exact recursion
constexpr double kLogisticDenseTol = 1e-6;     // ODE tolerance budget
constexpr double kLogisticHorizon = 50.0;

constexpr int kEnvelopeStarts = 100;
constexpr double kEnvelopeSlack = 1e-9;

constexpr long long kBoxSamples = 10000;       // per graininess value

constexpr long long kInvarianceStarts = 1000;  // per region

constexpr long long kDegenerateSamples = 10000;
constexpr double kDegenerateOperatorTol = 1e-12;  // floored relative
constexpr long long kDegenerateStarts = 1000;
constexpr double kDegenerateLineTol = 1e-6;

constexpr long long kNoExtinctionStarts = 1000;

constexpr double kExpIdentityTol = 1e-12;

// ---- canonical parameter sets (one per regime) ------------------------------
ModelParams exclusion_y_params() { return {0.5, 0.3, 2.0, 0.3, 1.0, 1.0}; }
ModelParams exclusion_x_params() { return {0.3, 0.5, 0.3, 2.0, 1.0, 1.0}; }
ModelParams bistable_params() { return {1.0, 1.0, 2.0, 2.0, 1.0, 1.0}; }
ModelParams coexistence_params() { return {1.0, 1.0, 0.5, 0.5, 1.0, 1.0}; }
ModelParams degenerate_params() { return {1.0, 1.0, 1.0, 1.0, 1.0, 1.0}; }

TimeScale mixed_pattern_scale() {
  return TimeScale::pattern({{1.0, 1.0}, {2.0, 3.0}}, 3.0, 1.0);
}

struct Outcome {
  bool pass = false;
  std::string note;
};

bool close_floored(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- 1: flagship doubling-scale scenario ------------------------------------
// Three documented starts on the scale {2^n} from t = 1 must enter the
// trapping band within 5 recursion steps and reach (0, 1) in max-norm within
// 1e-6 inside the step budget; the whole reproduction must run in under 1 s.
Outcome criterion_quantum_scenario() {
  const ModelParams p = exclusion_y_params();
  const TimeScale ts = TimeScale::quantum(2.0, 1.0);
  const EquilibriumSet eqs = equilibria(p);
  const std::vector<State> starts{{2.0, 1.0}, {0.1, 0.3}, {3.0, 2.0}};

  const auto t_begin = Clock::now();
  long long worst_entry = 0;
  long long worst_hit = 0;
  for (const State& s0 : starts) {
    const Trajectory traj =
        simulate(p, ts, 1.0, s0, SimBudget{{}, kQuantumStepBudget});
    const ConvergenceReport rep =
        detect_convergence(traj, eqs, kQuantumConvergenceTol);
    if (!rep.converged || rep.target != "EL") {
      return {false, "a start did not settle on (0, 1)"};
    }
    if (!rep.steps_to_invariant_region) {
      return {false, "a start never entered the trapping band"};
    }
    worst_entry = std::max(worst_entry, *rep.steps_to_invariant_region);

    long long first_hit = -1;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      const State& st = traj.samples[i].state;
      if (std::max(std::abs(st.x), std::abs(st.y - 1.0)) <
          kQuantumConvergenceTol) {
        first_hit = static_cast<long long>(i);
        break;
      }
    }
    if (first_hit < 0 || first_hit > kQuantumStepBudget) {
      return {false, "max-norm error never dropped below 1e-6 in budget"};
    }
    worst_hit = std::max(worst_hit, first_hit);
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - t_begin).count();

  if (worst_entry > kQuantumEntrySteps) {
    return {false, "band entry took " + std::to_string(worst_entry) + " steps"};
  }
  if (elapsed >= kQuantumRuntimeLimit) {
    return {false, "runtime " + fmt(elapsed) + " s exceeds 1 s"};
  }
  return {true, "entry <= " + std::to_string(worst_entry) +
                    " steps, 1e-6 by step " + std::to_string(worst_hit) +
                    ", " + fmt(elapsed) + " s"};
}

// ---- 2: regime classification table -----------------------------------------
// The five canonical parameter sets must classify exactly as the hand signs of
// (alpha L - 1, beta K - 1) dictate.
Outcome criterion_regime_table() {
  const std::vector<std::pair<ModelParams, Regime>> table{
      {exclusion_y_params(), Regime::ExclusionYWins},
      {exclusion_x_params(), Regime::ExclusionXWins},
      {bistable_params(), Regime::Bistable},
      {coexistence_params(), Regime::Coexistence},
      {degenerate_params(), Regime::DegenerateLine},
  };
  for (const auto& [p, expected] : table) {
    // Independent hand evaluation of the two decision quantities.
    const double a = p.alpha * p.L - 1.0;
    const double b = p.beta * p.K - 1.0;
    Regime hand;
    if (a == 0.0 && b == 0.0) hand = Regime::DegenerateLine;
    else if (a > 0.0 && b < 0.0) hand = Regime::ExclusionYWins;
    else if (a < 0.0 && b > 0.0) hand = Regime::ExclusionXWins;
    else if (a > 0.0 && b > 0.0) hand = Regime::Bistable;
    else if (a < 0.0 && b < 0.0) hand = Regime::Coexistence;
    else hand = Regime::MixedBoundary;

    const Regime got = classify_regime(p);
    if (got != expected || got != hand) {
      return {false, std::string("mismatch: got ") + regime_name(got) +
                         ", hand " + regime_name(hand) + ", expected " +
                         regime_name(expected)};
    }
  }
  return {true, "5/5 agree with hand evaluation"};
}

// ---- 3: sign-lemma oracle sweep ----------------------------------------------
// For one parameter set per regime, 10^4 samples per claimed region, at each
// graininess in {0, 0.01, 0.5, 1, 10, 1000}: zero sign violations, < 30 s.
Outcome criterion_sign_oracle() {
  const std::vector<double> mu_set{0.0, 0.01, 0.5, 1.0, 10.0, 1000.0};
  const std::vector<ModelParams> sets{exclusion_y_params(), exclusion_x_params(),
                                      bistable_params(), coexistence_params(),
                                      degenerate_params()};
  const auto t_begin = Clock::now();
  long long total = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const CheckReport rep =
        check_sign_lemmas(sets[i], kSignSamples, mu_set, 100 + i);
    total += rep.samples;
    worst = std::min(worst, rep.worst_margin);
    if (rep.violations != 0) {
      return {false, std::to_string(rep.violations) + " violations: " +
                         rep.detail};
    }
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - t_begin).count();
  if (elapsed >= kSignRuntimeLimit) {
    return {false, "runtime " + fmt(elapsed) + " s exceeds 30 s"};
  }
  return {true, std::to_string(total) + " checks, worst margin " + fmt(worst) +
                    ", " + fmt(elapsed) + " s"};
}

// ---- 4: two evaluation routes and the quadratic graininess law ---------------
// The rational form and the direct post-step offset must agree to 1e-10
// (floored relative) on 10^4 random inputs, and the operator numerator
// reconstructed from the direct route must be quadratic in the graininess:
// a Lagrange fit through mu = {0, 0.3, 1} predicts mu = 5 to 1e-10.
Outcome criterion_two_routes() {
  const std::vector<double> mu_set{0.0, 0.01, 0.5, 1.0, 10.0, 1000.0};
  const std::vector<double> nodes{0.0, 0.3, 1.0};
  const double probe = 5.0;
  Rng rng(42, "two-routes");
  double worst_route = 0.0, worst_interp = 0.0;

  for (long long n = 0; n < kTwoRouteInputs; ++n) {
    ModelParams p;
    p.r = rng.uniform(0.1, 3.0);
    p.s = rng.uniform(0.1, 3.0);
    p.alpha = rng.uniform(0.1, 3.0);
    p.beta = rng.uniform(0.1, 3.0);
    p.K = rng.uniform(0.1, 3.0);
    p.L = rng.uniform(0.1, 3.0);
    const State st{rng.uniform(0.0, 3.0), rng.uniform(0.0, 3.0)};

    for (double mu : mu_set) {
      const RootOperatorEval eh = eval_Lh(p, mu, st);
      const double dh = eval_Lh_direct(p, mu, st);
      const RootOperatorEval ek = eval_Lk(p, mu, st);
      const double dk = eval_Lk_direct(p, mu, st);
      worst_route = std::max({worst_route,
                              std::abs(eh.value - dh) /
                                  std::max({1.0, std::abs(eh.value), std::abs(dh)}),
                              std::abs(ek.value - dk) /
                                  std::max({1.0, std::abs(ek.value), std::abs(dk)})});
      if (!close_floored(eh.value, dh, kTwoRouteTol) ||
          !close_floored(ek.value, dk, kTwoRouteTol)) {
        return {false, "route disagreement at input " + std::to_string(n)};
      }
    }

    // Numerators recovered from the direct route at the three nodes determine
    // the value at mu = 5 exactly when the numerator is quadratic in mu.
    for (int which = 0; which < 2; ++which) {
      auto direct_numerator = [&](double mu) {
        if (which == 0) {
          return eval_Lh_direct(p, mu, st) * p.alpha *
                 eval_Lh(p, mu, st).denominator;
        }
        return eval_Lk_direct(p, mu, st) * eval_Lk(p, mu, st).denominator / p.L;
      };
      double pred = 0.0, scale = 1.0;
      for (int i = 0; i < 3; ++i) {
        double w = 1.0;
        for (int j = 0; j < 3; ++j) {
          if (j != i) w *= (probe - nodes[j]) / (nodes[i] - nodes[j]);
        }
        const double ni = direct_numerator(nodes[i]);
        pred += w * ni;
        scale = std::max(scale, std::abs(ni));
      }
      const double actual = direct_numerator(probe);
      scale = std::max(scale, std::abs(actual));
      const double err = std::abs(pred - actual) / scale;
      worst_interp = std::max(worst_interp, err);
      if (err > kInterpolationTol) {
        return {false, "interpolation error " + fmt(err) + " at input " +
                           std::to_string(n)};
      }
    }
  }
  return {true, "worst route gap " + fmt(worst_route) + ", worst interpolation " +
                    fmt(worst_interp)};
}

// ---- 5: closed-form logistic -------------------------------------------------
// With the competitor absent the survivor follows the closed-form logistic
// solution: to 1e-9 over 50 unit-lattice steps (exact recursion) and to 1e-6
// over horizon 50 on the continuum (ODE tolerance).
Outcome criterion_logistic() {
  ModelParams p;
  p.r = 0.5;
  p.K = 2.0;
  double worst = 0.0;
  for (double x0 : {0.1, 3.0}) {
    const TimeScale z = TimeScale::lattice(1.0, 0.0);
    const Trajectory tz =
        simulate(p, z, 0.0, {x0, 0.0}, SimBudget{kLogisticHorizon, {}});
    for (const TrajectorySample& s : tz.samples) {
      const double ref = logistic_closed_form(p.r, p.K, z, 0.0, x0, s.t);
      const double err = std::abs(s.state.x - ref);
      worst = std::max(worst, err);
      if (err > kLogisticLatticeTol) {
        return {false, "lattice error " + fmt(err) + " at t = " + fmt(s.t)};
      }
    }

    const TimeScale re = TimeScale::reals();
    const Trajectory tr =
        simulate(p, re, 0.0, {x0, 0.0}, SimBudget{kLogisticHorizon, {}}, 1e-9);
    for (const TrajectorySample& s : tr.samples) {
      const double ref = logistic_closed_form(p.r, p.K, re, 0.0, x0, s.t);
      const double err = std::abs(s.state.x - ref);
      if (err > kLogisticDenseTol) {
        return {false, "dense error " + fmt(err) + " at t = " + fmt(s.t)};
      }
    }
  }
  return {true, "worst lattice gap " + fmt(worst) + " over 50 steps"};
}

// ---- 6: boundedness envelope ---------------------------------------------------
// 100 random positive starts, cycling through all five regimes and the three
// scales (unit lattice, doubling scale, mixed pattern): no trajectory sample
// may exceed the per-species envelope by more than 1e-9.
Outcome criterion_envelope() {
  const std::vector<ModelParams> sets{exclusion_y_params(), exclusion_x_params(),
                                      bistable_params(), coexistence_params(),
                                      degenerate_params()};
  Rng rng(7, "envelope");
  double worst_excess = -std::numeric_limits<double>::infinity();
  long long samples = 0;
  for (int i = 0; i < kEnvelopeStarts; ++i) {
    const ModelParams& p = sets[i % sets.size()];
    const int scale_pick = (i / 5) % 3;
    TimeScale ts;
    double t0 = 0.0;
    SimBudget budget;
    if (scale_pick == 0) {
      ts = TimeScale::lattice(1.0, 0.0);
      budget = SimBudget{{}, 200};
    } else if (scale_pick == 1) {
      ts = TimeScale::quantum(2.0, 1.0);
      t0 = 1.0;
      budget = SimBudget{{}, 50};
    } else {
      ts = mixed_pattern_scale();
      t0 = 1.0;
      budget = SimBudget{40.0, {}};
    }
    const State s0{rng.uniform(1e-3, 3.0), rng.uniform(1e-3, 3.0)};
    const Trajectory traj = simulate(p, ts, t0, s0, budget);
    for (const TrajectorySample& s : traj.samples) {
      const double bx = boundedness_envelope(p.r, p.K, ts, t0, s0.x, s.t);
      const double by = boundedness_envelope(p.s, p.L, ts, t0, s0.y, s.t);
      worst_excess = std::max({worst_excess, s.state.x - bx, s.state.y - by});
      ++samples;
      if (s.state.x > bx + kEnvelopeSlack || s.state.y > by + kEnvelopeSlack) {
        return {false, "envelope exceeded by " + fmt(worst_excess) + " at t = " +
                           fmt(s.t)};
      }
    }
  }
  return {true, std::to_string(samples) + " samples, worst excess " +
                    fmt(worst_excess)};
}

// ---- 7: saddle box exclusion ----------------------------------------------------
// In the bistable and coexistence regimes, one recursion step from the lower
// box (minus the interior equilibrium) never lands in the interior of the
// upper box, at graininess {0.1, 1, 10}.
Outcome criterion_box_exclusion() {
  const std::vector<double> mu_set{0.1, 1.0, 10.0};
  long long total = 0;
  for (const ModelParams& p : {bistable_params(), coexistence_params()}) {
    const CheckReport rep = check_box_exclusion(p, kBoxSamples, mu_set, 11);
    total += rep.samples;
    if (rep.violations != 0) {
      return {false, std::to_string(rep.violations) + " images in the upper box"};
    }
  }
  return {true, std::to_string(total) + " step images checked"};
}

// ---- 8: invariant regions ------------------------------------------------------
// The exclusion band, both bistable trapping octants, and both coexistence
// trapping wedges each hold over 1000 trajectories whose starts include the
// boundary arcs; no trajectory may exit.
Outcome criterion_invariance() {
  struct Row {
    ModelParams p;
    InvariantRegion region;
  };
  const std::vector<Row> rows{
      {exclusion_y_params(), InvariantRegion::Omega2},
      {bistable_params(), InvariantRegion::R2T},
      {bistable_params(), InvariantRegion::R5T},
      {coexistence_params(), InvariantRegion::S2T},
      {coexistence_params(), InvariantRegion::S5T},
  };
  const TimeScale z = TimeScale::lattice(1.0, 0.0);
  long long total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CheckReport rep =
        check_invariance(rows[i].p, z, rows[i].region, kInvarianceStarts,
                         SimBudget{{}, 60}, 500 + i);
    total += rep.samples;
    if (rep.violations != 0) {
      return {false, std::string(invariant_region_name(rows[i].region)) +
                         ": " + rep.detail};
    }
  }
  return {true, std::to_string(total) + " samples across 5 regions, zero exits"};
}

// ---- 9: degenerate regime -------------------------------------------------------
// With coinciding nullclines the two operators are identical (1e-12 floored
// relative over 10^4 samples); 1000 positive starts settle onto the segment
// y = h(x), 0 <= x <= K within 1e-6; the side of the line never flips.
Outcome criterion_degenerate() {
  const ModelParams p = degenerate_params();
  Rng rng(9, "degenerate");
  const std::vector<double> mu_set{0.0, 0.01, 0.5, 1.0, 10.0, 1000.0};
  double worst_gap = 0.0;
  for (long long n = 0; n < kDegenerateSamples; ++n) {
    const State st{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
    const double mu = mu_set[static_cast<std::size_t>(rng.next() % mu_set.size())];
    const double lh = eval_Lh(p, mu, st).value;
    const double lk = eval_Lk(p, mu, st).value;
    worst_gap = std::max(worst_gap,
                         std::abs(lh - lk) /
                             std::max({1.0, std::abs(lh), std::abs(lk)}));
    if (!close_floored(lh, lk, kDegenerateOperatorTol)) {
      return {false, "operator gap " + fmt(std::abs(lh - lk))};
    }
  }

  const TimeScale z = TimeScale::lattice(1.0, 0.0);
  const EquilibriumSet eqs = equilibria(p);
  for (long long n = 0; n < kDegenerateStarts; ++n) {
    const State s0{rng.uniform(1e-3, 3.0), rng.uniform(1e-3, 3.0)};
    const Trajectory traj = simulate(p, z, 0.0, s0, SimBudget{{}, 200});
    const ConvergenceReport rep =
        detect_convergence(traj, eqs, kDegenerateLineTol);
    if (!rep.converged || rep.target.rfind("line point", 0) != 0) {
      return {false, "start " + std::to_string(n) + " missed the line"};
    }
    const double offset =
        rep.target_state.y - nullcline_h(p, rep.target_state.x);
    if (std::abs(offset) > kDegenerateLineTol ||
        rep.target_state.x < -kDegenerateLineTol ||
        rep.target_state.x > p.K + kDegenerateLineTol) {
      return {false, "limit point off the segment"};
    }
    // The trajectory must stay on one side of the line throughout.
    double prev = s0.y - nullcline_h(p, s0.x);
    for (const TrajectorySample& s : traj.samples) {
      const double cur = s.state.y - nullcline_h(p, s.state.x);
      if (prev * cur < 0.0) {
        return {false, "sign flip across the line at t = " + fmt(s.t)};
      }
      prev = cur;
    }
  }
  return {true, "operator gap <= " + fmt(worst_gap) +
                    ", 1000 starts on the line, no side flips"};
}

// ---- 10: no extinction in the bistable regime ------------------------------------
// 1000 random positive starts in the bistable regime all converge to one of
// the two monocultures or the saddle itself -- never to (0, 0).
Outcome criterion_no_extinction() {
  const CheckReport rep = check_global_convergence(
      bistable_params(), TimeScale::lattice(1.0, 0.0), kNoExtinctionStarts,
      SimBudget{{}, 2000}, 1e-6, 13);
  if (rep.violations != 0) {
    return {false, rep.detail};
  }
  return {true, std::to_string(rep.samples) + " starts, none reached (0, 0)"};
}

// ---- 11: exponential identities ----------------------------------------------------
// Semigroup and reciprocal identities to 1e-12 relative, and the classical
// sandwich 1 - p (t - t0) <= e_{-p}(t, t0) <= exp(p (t - t0)) for constant
// p >= 0 with 1 - mu p > 0 along the span, on all four stock scales.
Outcome criterion_exponential_identities() {
  struct Row {
    TimeScale ts;
    std::vector<double> pts;  // three ascending sample points
    double sandwich_end;      // span end for the sandwich bounds
  };
  const std::vector<Row> rows{
      {TimeScale::lattice(1.0, 0.0), {0.0, 3.0, 7.0}, 100.0},
      {TimeScale::quantum(2.0, 1.0), {1.0, 4.0, 16.0}, 64.0},
      {mixed_pattern_scale(), {1.0, 4.0, 7.0}, 31.0},
      {TimeScale::reals(), {0.0, 1.5, 5.0}, 50.0},
  };
  for (const Row& row : rows) {
    const double a = row.pts[0], b = row.pts[1], c = row.pts[2];
    for (double pv : {0.3, 0.05, 1.0}) {
      const double lhs = exp_ts(row.ts, pv, c, b) * exp_ts(row.ts, pv, b, a);
      const double rhs = exp_ts(row.ts, pv, c, a);
      if (std::abs(lhs - rhs) > kExpIdentityTol * std::abs(rhs)) {
        return {false, "semigroup gap at p = " + fmt(pv)};
      }
      const double om = exp_ominus_ts(row.ts, pv, c, a);
      if (std::abs(om * rhs - 1.0) > kExpIdentityTol) {
        return {false, "reciprocal gap at p = " + fmt(pv)};
      }
    }
    // Sandwich: p small enough that 1 - mu p stays positive along the span.
    for (double pv : {0.0, 0.01}) {
      const double v = exp_ts(row.ts, -pv, row.sandwich_end, a);
      const double span = row.sandwich_end - a;
      if (v < 1.0 - pv * span - kExpIdentityTol ||
          v > std::exp(pv * span) + kExpIdentityTol) {
        return {false, "sandwich violated at p = " + fmt(pv)};
      }
    }
  }
  return {true, "semigroup, reciprocal, and sandwich hold on all 4 scales"};
}

}  // namespace

int main() {
  struct Entry {
    const char* title;
    Outcome (*run)();
  };
  const std::vector<Entry> entries{
      {"doubling-scale scenario reproduction", criterion_quantum_scenario},
      {"regime classification table", criterion_regime_table},
      {"sign-lemma oracle sweep", criterion_sign_oracle},
      {"operator route agreement and quadratic graininess law",
       criterion_two_routes},
      {"closed-form logistic comparison", criterion_logistic},
      {"boundedness envelope", criterion_envelope},
      {"saddle box exclusion", criterion_box_exclusion},
      {"invariant region suite", criterion_invariance},
      {"degenerate line regime", criterion_degenerate},
      {"no extinction in the bistable regime", criterion_no_extinction},
      {"exponential identities", criterion_exponential_identities},
  };

  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    Outcome out;
    try {
      out = entries[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2zu. %s — %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                entries[i].title, out.note.c_str());
    if (!out.pass) ++failures;
  }
  std::printf("%zu of %zu acceptance criteria passed\n",
              entries.size() - failures, entries.size());
  return failures == 0 ? 0 : 1;
}
