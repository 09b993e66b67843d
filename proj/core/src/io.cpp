#include "tslv/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "tslv/errors.hpp"
#include "json_detail.hpp"

namespace tslv {

namespace detail {

json parse_or_throw(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string(what) + ": " + e.what());
  }
}

ojson timescale_to_jobj(const TimeScale& ts) {
  ojson j;
  switch (ts.kind()) {
    case TimeScale::Kind::Reals:
      j["kind"] = "reals";
      break;
    case TimeScale::Kind::Lattice:
      j["kind"] = "lattice";
      j["step"] = ts.lattice_step();
      j["origin"] = ts.lattice_origin();
      break;
    case TimeScale::Kind::Quantum:
      j["kind"] = "quantum";
      j["q"] = ts.quantum_q();
      j["start"] = ts.quantum_start();
      break;
    case TimeScale::Kind::Pattern: {
      j["kind"] = "pattern";
      ojson arr = ojson::array();
      for (const PatternElement& e : ts.pattern_elements()) {
        ojson el;
        if (e.is_interval()) {
          el["interval"] = {e.a, e.b};
        } else {
          el["point"] = e.a;
        }
        arr.push_back(el);
      }
      j["pattern"] = std::move(arr);
      j["period"] = ts.pattern_period();
      j["anchor"] = ts.pattern_anchor();
      break;
    }
  }
  return j;
}

TimeScale timescale_from_jobj(const json& j) {
  try {
    if (!j.is_object()) throw ConfigInvalid("timescale: expected an object");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "reals") {
      return TimeScale::reals();
    }
    if (kind == "lattice") {
      return TimeScale::lattice(j.at("step").get<double>(),
                                j.value("origin", 0.0));
    }
    if (kind == "quantum") {
      return TimeScale::quantum(j.at("q").get<double>(), j.value("start", 1.0));
    }
    if (kind == "pattern") {
      std::vector<PatternElement> elems;
      for (const json& el : j.at("pattern")) {
        if (el.contains("point")) {
          const double a = el.at("point").get<double>();
          elems.push_back({a, a});
        } else if (el.contains("interval")) {
          const json& iv = el.at("interval");
          if (!iv.is_array() || iv.size() != 2) {
            throw ConfigInvalid("timescale: interval must be [a, b]");
          }
          elems.push_back({iv[0].get<double>(), iv[1].get<double>()});
        } else {
          throw ConfigInvalid("timescale: pattern element needs point or interval");
        }
      }
      return TimeScale::pattern(std::move(elems), j.at("period").get<double>(),
                                j.at("anchor").get<double>());
    }
    throw ConfigInvalid("timescale: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("timescale: ") + e.what());
  }
}

ojson params_to_jobj(const ModelParams& p) {
  ojson j;
  j["r"] = p.r;
  j["s"] = p.s;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["K"] = p.K;
  j["L"] = p.L;
  return j;
}

ModelParams params_from_jobj(const json& j) {
  try {
    if (!j.is_object()) throw ConfigInvalid("params: expected an object");
    ModelParams p;
    p.r = j.at("r").get<double>();
    p.s = j.at("s").get<double>();
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    p.K = j.at("K").get<double>();
    p.L = j.at("L").get<double>();
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("params: ") + e.what());
  }
}

ojson budget_to_jobj(const SimBudget& b) {
  ojson j = ojson::object();
  if (b.horizon) j["horizon"] = *b.horizon;
  if (b.max_steps) j["max_steps"] = *b.max_steps;
  return j;
}

SimBudget budget_from_jobj(const json& j) {
  try {
    SimBudget b;
    if (j.is_null()) return b;
    if (!j.is_object()) throw ConfigInvalid("budget: expected an object");
    if (j.contains("horizon") && !j.at("horizon").is_null()) {
      b.horizon = j.at("horizon").get<double>();
    }
    if (j.contains("max_steps") && !j.at("max_steps").is_null()) {
      b.max_steps = j.at("max_steps").get<long long>();
    }
    return b;
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("budget: ") + e.what());
  }
}

}  // namespace detail

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string timescale_to_json(const TimeScale& ts) {
  return detail::timescale_to_jobj(ts).dump();
}

TimeScale timescale_from_json(const std::string& text) {
  return detail::timescale_from_jobj(detail::parse_or_throw(text, "timescale"));
}

std::string params_to_json(const ModelParams& p) {
  return detail::params_to_jobj(p).dump();
}

ModelParams params_from_json(const std::string& text) {
  return detail::params_from_jobj(detail::parse_or_throw(text, "params"));
}

Scenario scenario_from_json(const std::string& text) {
  const detail::json j = detail::parse_or_throw(text, "scenario");
  try {
    if (!j.is_object()) throw ConfigInvalid("scenario: expected an object");
    Scenario sc;
    sc.scale = detail::timescale_from_jobj(j.at("timescale"));
    sc.params = detail::params_from_jobj(j.at("params"));
    sc.t0 = j.value("t0", 0.0);
    if (j.contains("initial")) {
      for (const detail::json& st : j.at("initial")) {
        if (!st.is_array() || st.size() != 2) {
          throw ConfigInvalid("scenario: each initial state must be [x, y]");
        }
        sc.initial.push_back({st[0].get<double>(), st[1].get<double>()});
      }
    } else if (j.contains("x0") && j.contains("y0")) {
      sc.initial.push_back({j.at("x0").get<double>(), j.at("y0").get<double>()});
    } else {
      throw ConfigInvalid("scenario: needs x0/y0 or an initial list");
    }
    if (sc.initial.empty()) {
      throw ConfigInvalid("scenario: initial list is empty");
    }
    if (j.contains("budget")) {
      sc.budget = detail::budget_from_jobj(j.at("budget"));
    }
    sc.tol = j.value("tol", 1e-9);
    return sc;
  } catch (const detail::json::exception& e) {
    throw ConfigInvalid(std::string("scenario: ") + e.what());
  }
}

std::string scenario_to_json(const Scenario& sc) {
  detail::ojson j;
  j["timescale"] = detail::timescale_to_jobj(sc.scale);
  j["params"] = detail::params_to_jobj(sc.params);
  j["t0"] = sc.t0;
  detail::ojson arr = detail::ojson::array();
  for (const State& s : sc.initial) arr.push_back({s.x, s.y});
  j["initial"] = std::move(arr);
  j["budget"] = detail::budget_to_jobj(sc.budget);
  j["tol"] = sc.tol;
  return j.dump();
}

std::string classification_to_json(const ModelParams& p) {
  const Regime g = classify_regime(p);
  const EquilibriumSet eq = equilibria(p);
  detail::ojson j;
  j["regime"] = regime_name(g);
  j["E0"] = {eq.E0.x, eq.E0.y};
  j["EK"] = {eq.EK.x, eq.EK.y};
  j["EL"] = {eq.EL.x, eq.EL.y};
  if (eq.Estar) {
    j["Estar"] = {eq.Estar->x, eq.Estar->y};
  } else {
    j["Estar"] = nullptr;
  }
  j["feasible"] = eq.Estar.has_value();
  j["line"] = eq.line;
  return j.dump();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  bool has_regions = true;
  try {
    if (!traj.samples.empty()) {
      classify_region(traj.params, traj.samples.front().state);
    }
  } catch (const RegimeMismatch&) {
    has_regions = false;
  }
  out << "t,x,y,mu,mode,region\n";
  for (const TrajectorySample& s : traj.samples) {
    out << format_double(s.t) << ',' << format_double(s.state.x) << ','
        << format_double(s.state.y) << ',' << format_double(s.mu) << ','
        << step_mode_name(s.mode) << ',';
    if (has_regions) {
      out << region_name(classify_region(traj.params, s.state));
    }
    out << '\n';
  }
}

void write_phaseplane_csv(std::ostream& out,
                          const std::vector<PhasePlaneRow>& rows) {
  out << "t,mu,which,x,y\n";
  for (const PhasePlaneRow& r : rows) {
    out << format_double(r.t) << ',';
    if (r.nullcline) {
      out << "nullcline";
    } else {
      out << format_double(r.mu);
    }
    out << ',' << (r.which == Nullcline::H ? 'h' : 'k') << ','
        << format_double(r.x) << ',' << format_double(r.y) << '\n';
  }
}

std::string convergence_report_to_json(const ConvergenceReport& report) {
  detail::ojson j;
  j["converged"] = report.converged;
  j["target"] = report.target;
  if (std::isfinite(report.target_state.x)) {
    j["target_state"] = {report.target_state.x, report.target_state.y};
  } else {
    j["target_state"] = nullptr;
  }
  if (std::isfinite(report.final_distance)) {
    j["final_distance"] = report.final_distance;
  } else {
    j["final_distance"] = nullptr;
  }
  if (report.steps_to_invariant_region) {
    j["steps_to_invariant_region"] = *report.steps_to_invariant_region;
  } else {
    j["steps_to_invariant_region"] = nullptr;
  }
  return j.dump();
}

}  // namespace tslv
