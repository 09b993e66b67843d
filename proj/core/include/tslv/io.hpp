#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tslv/simulate.hpp"

namespace tslv {

// 17-significant-digit, locale-independent rendering (round-trip safe).
std::string format_double(double v);

// JSON text round-trips. TimeScale:
//   {"kind":"reals"}
//   {"kind":"lattice","step":1,"origin":0}
//   {"kind":"quantum","q":2,"start":1}
//   {"kind":"pattern","pattern":[{"point":1},{"interval":[2,3]}],
//    "period":3,"anchor":1}
// ModelParams: {"r":0.5,"s":0.3,"alpha":2,"beta":0.3,"K":1,"L":1}.
// Parsers throw ConfigInvalid on malformed input.
std::string timescale_to_json(const TimeScale& ts);
TimeScale timescale_from_json(const std::string& text);
std::string params_to_json(const ModelParams& p);
ModelParams params_from_json(const std::string& text);

// A bundled experiment: one scale, one parameter set, one or more starts.
struct Scenario {
  TimeScale scale;
  ModelParams params;
  double t0 = 0.0;
  std::vector<State> initial;
  SimBudget budget;
  double tol = 1e-9;
};

// Accepts either {"x0":..,"y0":..} or {"initial":[[x,y],...]} for the
// starts; budget is {"horizon":...} and/or {"max_steps":...}.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& sc);

// classify output: regime, all equilibria, feasibility of E*.
std::string classification_to_json(const ModelParams& p);

// Trajectory CSV: t,x,y,mu,mode,region. The region column is empty when the
// regime defines no region family.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

// Phase-plane CSV: t,mu,which,x,y. Nullcline rows carry the sentinel
// "nullcline" in the mu column (and nan for t); root-curve rows carry the mu
// value and, when derived from scale points, the time t (nan otherwise).
struct PhasePlaneRow {
  double t = std::numeric_limits<double>::quiet_NaN();
  double mu = 0.0;
  bool nullcline = false;
  Nullcline which = Nullcline::H;
  double x = 0.0;
  double y = 0.0;
};
void write_phaseplane_csv(std::ostream& out,
                          const std::vector<PhasePlaneRow>& rows);

std::string convergence_report_to_json(const ConvergenceReport& report);

}  // namespace tslv
