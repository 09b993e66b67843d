#include "tslv/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "tslv/errors.hpp"

namespace tslv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest time the walker will step to; beyond this sigma values approach
// the double range and products of graininesses overflow.
constexpr double kTimeCap = 1e300;

using OdeState = std::array<double, 2>;

// Snap tiny negative components (ODE rounding) back onto the axis, which is
// invariant for the flow.
double clamp_axis(double v) {
  return (v < 0.0 && v > -1e-12) ? 0.0 : v;
}

}  // namespace

const char* step_mode_name(StepMode m) {
  switch (m) {
    case StepMode::Seed: return "seed";
    case StepMode::Recursion: return "recursion";
    case StepMode::DenseOde: return "dense_ode";
  }
  return "?";
}

Trajectory simulate(const ModelParams& p, const TimeScale& ts, double t0,
                    const State& s0, const SimBudget& budget, double ode_tol) {
  p.validate();
  if (!(s0.x >= 0.0) || !(s0.y >= 0.0)) {
    throw ConfigInvalid("simulate: start state must be componentwise nonnegative");
  }
  if (!budget.horizon && !budget.max_steps) {
    throw ConfigInvalid("simulate: budget needs a horizon or max_steps");
  }
  if (budget.horizon && !(*budget.horizon >= t0)) {
    throw ConfigInvalid("simulate: horizon must be at or after t0");
  }
  if (!(ode_tol > 0.0)) {
    throw ConfigInvalid("simulate: ode tolerance must be positive");
  }
  if (!ts.contains(t0)) {
    std::ostringstream os;
    os.precision(17);
    os << "simulate: t0 = " << t0 << " is not a point of the time scale";
    throw PointNotInScale(os.str());
  }

  const double H = budget.horizon ? *budget.horizon : kInf;

  Trajectory traj{p, ts, {}, false, false};
  double t = t0;
  State s = s0;
  traj.samples.push_back({t, s, ts.graininess(t), StepMode::Seed});

  namespace ode = boost::numeric::odeint;
  auto sys = [&p](const OdeState& z, OdeState& dz, double) {
    dz[0] = p.r * z[0] * (1.0 - z[0] / p.K - p.alpha * z[1]);
    dz[1] = p.s * z[1] * (1.0 - z[1] / p.L - p.beta * z[0]);
  };

  long long steps = 0;
  while (true) {
    if (t >= H - membership_tol(H)) break;
    const ScaleStep st = ts.next_step(t);
    if (st.dense) {
      const double end = std::min(st.until, H);
      if (std::isinf(end)) {
        throw ConfigInvalid("simulate: a dense run without a horizon never ends");
      }
      auto stepper =
          ode::make_controlled<ode::runge_kutta_dopri5<OdeState>>(ode_tol, ode_tol);
      OdeState z{s.x, s.y};
      const double a = t;
      ode::integrate_adaptive(
          stepper, sys, z, a, end, (end - a) / 64.0,
          [&](const OdeState& zz, double tt) {
            if (tt <= a) return;  // seed point already recorded
            const State cur{clamp_axis(zz[0]), clamp_axis(zz[1])};
            traj.samples.push_back({tt, cur, ts.graininess(tt), StepMode::DenseOde});
          });
      s = {clamp_axis(z[0]), clamp_axis(z[1])};
      t = end;
      if (end < st.until) break;  // horizon fell inside the run
    } else {
      if (budget.max_steps && steps >= *budget.max_steps) {
        traj.budget_exceeded = budget.horizon.has_value();
        break;
      }
      if (st.until > kTimeCap) {
        traj.hit_time_limit = true;
        break;
      }
      if (st.until > H + membership_tol(H)) break;  // horizon between points
      const double mu = st.until - t;
      s = step_map(p, mu, s);
      ++steps;
      t = st.until;
      traj.samples.push_back({t, s, ts.graininess(t), StepMode::Recursion});
    }
  }
  return traj;
}

ConvergenceReport detect_convergence(const Trajectory& traj,
                                     const EquilibriumSet& eqs, double tol,
                                     std::size_t window) {
  ConvergenceReport rep;
  rep.converged = false;
  rep.target = "";
  rep.target_state = {std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN()};

  const auto& samples = traj.samples;
  if (samples.empty()) return rep;
  if (window == 0) window = 1;
  const std::size_t n = samples.size();
  const std::size_t w = std::min(window, n);
  const State last = samples[n - 1].state;

  auto dist = [](const State& a, const State& b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
  };

  // Fixed-point candidates, nearest first.
  struct Candidate {
    std::string name;
    State st;
  };
  std::vector<Candidate> cands{{"E0", eqs.E0}, {"EK", eqs.EK}, {"EL", eqs.EL}};
  if (eqs.Estar) cands.push_back({"Estar", *eqs.Estar});
  std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
    return dist(last, a.st) < dist(last, b.st);
  });
  for (const Candidate& c : cands) {
    bool ok = true;
    for (std::size_t i = n - w; i < n; ++i) {
      if (dist(samples[i].state, c.st) >= tol) {
        ok = false;
        break;
      }
    }
    if (ok) {
      rep.converged = true;
      rep.target = c.name;
      rep.target_state = c.st;
      break;
    }
  }

  if (!rep.converged && eqs.line) {
    // Whole-line convergence: the trailing window must hug the segment
    // {(x, h(x)) : 0 <= x <= K} and have stopped drifting along it.
    const ModelParams& p = traj.params;
    auto line_dist = [&](const State& st) {
      const double cx = std::clamp(st.x, 0.0, p.K);
      return std::max(std::abs(st.x - cx), std::abs(st.y - nullcline_h(p, cx)));
    };
    bool ok = true;
    for (std::size_t i = n - w; i < n; ++i) {
      if (line_dist(samples[i].state) >= tol ||
          dist(samples[i].state, last) >= tol) {
        ok = false;
        break;
      }
    }
    if (ok) {
      const double cx = std::clamp(last.x, 0.0, p.K);
      rep.converged = true;
      rep.target_state = {cx, nullcline_h(p, cx)};
      std::ostringstream os;
      os.precision(17);
      os << "line point (" << rep.target_state.x << ", " << rep.target_state.y
         << ")";
      rep.target = os.str();
    }
  }

  if (rep.converged) {
    rep.final_distance = dist(last, rep.target_state);
  }

  // First sample inside any forward-invariant region of this regime.
  const auto regions = invariant_regions_for(traj.params);
  if (!regions.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (InvariantRegion reg : regions) {
        if (in_invariant_region(traj.params, reg, samples[i].state)) {
          rep.steps_to_invariant_region = static_cast<long long>(i);
          break;
        }
      }
      if (rep.steps_to_invariant_region) break;
    }
  }
  return rep;
}

std::vector<std::pair<double, Region>> region_trace(const Trajectory& traj) {
  std::vector<std::pair<double, Region>> out;
  out.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples) {
    out.emplace_back(s.t, classify_region(traj.params, s.state));
  }
  return out;
}

}  // namespace tslv
