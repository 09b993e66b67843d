#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tslv/regions.hpp"

namespace tslv {

// How a sample was produced: the initial state, one exact recursion step at a
// right-scattered point, or numerical integration across a dense interval.
enum class StepMode { Seed, Recursion, DenseOde };

const char* step_mode_name(StepMode mode);

struct TrajectorySample {
  double t = 0.0;
  State state;
  double mu = 0.0;  // graininess at t
  StepMode mode = StepMode::Seed;
};

// At least one bound must be set. max_steps counts recursion steps; dense
// integration is bounded by the horizon.
struct SimBudget {
  std::optional<double> horizon;
  std::optional<long long> max_steps;
};

struct Trajectory {
  ModelParams params;
  TimeScale scale;
  std::vector<TrajectorySample> samples;
  // True when a horizon was requested but max_steps ran out first.
  bool budget_exceeded = false;
  // True when time stepping stopped because t would exceed ~1e300 (quantum
  // scales outgrow double range long before large step budgets).
  bool hit_time_limit = false;
};

// Advances the system from s0 at t0 along the scale: step_map at scattered
// points, the mu=0 ODE across dense runs (adaptive embedded RK45, local
// error <= ode_tol, endpoints hit exactly, every accepted step sampled).
// Throws PointNotInScale / ConfigInvalid on bad input; a budget overrun is
// reported via the budget_exceeded flag, never an exception.
Trajectory simulate(const ModelParams& p, const TimeScale& ts, double t0,
                    const State& s0, const SimBudget& budget,
                    double ode_tol = 1e-9);

struct ConvergenceReport {
  bool converged = false;
  // "E0" | "EK" | "EL" | "Estar" | "line point (x, y)" | "".
  std::string target;
  State target_state;
  double final_distance = std::numeric_limits<double>::infinity();
  // Recursion+ODE samples taken before first entering an invariant region of
  // the regime; nullopt when never entered or no region is defined.
  std::optional<long long> steps_to_invariant_region;
};

// The last `window` samples must lie within tol (max-norm) of one equilibrium
// of eqs; in the degenerate regime, within tol of the segment y = h(x),
// 0 <= x <= K, with drift < tol across the window.
ConvergenceReport detect_convergence(const Trajectory& traj,
                                     const EquilibriumSet& eqs,
                                     double tol = 1e-8,
                                     std::size_t window = 10);

// Per-sample region labels. Throws RegimeMismatch when the regime defines no
// region family.
std::vector<std::pair<double, Region>> region_trace(const Trajectory& traj);

}  // namespace tslv
