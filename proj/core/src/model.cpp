#include "tslv/model.hpp"

#include <cmath>
#include <sstream>

#include "tslv/errors.hpp"
#include "tslv/exponential.hpp"

namespace tslv {

void ModelParams::validate() const {
  auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!pos(r) || !pos(s) || !pos(alpha) || !pos(beta) || !pos(K) || !pos(L)) {
    std::ostringstream os;
    os << "model parameters must be finite and positive (r=" << r << ", s=" << s
       << ", alpha=" << alpha << ", beta=" << beta << ", K=" << K << ", L=" << L
       << ")";
    throw ConfigInvalid(os.str());
  }
}

const char* regime_name(Regime g) {
  switch (g) {
    case Regime::ExclusionYWins: return "ExclusionYWins";
    case Regime::ExclusionXWins: return "ExclusionXWins";
    case Regime::Bistable: return "Bistable";
    case Regime::Coexistence: return "Coexistence";
    case Regime::DegenerateLine: return "DegenerateLine";
    case Regime::MixedBoundary: return "MixedBoundary";
  }
  return "?";
}

Regime classify_regime(const ModelParams& p) {
  p.validate();
  const double u = p.alpha * p.L - 1.0;
  const double v = p.beta * p.K - 1.0;
  const bool u0 = std::abs(u) <= kRegimeTol;
  const bool v0 = std::abs(v) <= kRegimeTol;
  if (u0 && v0) return Regime::DegenerateLine;
  if (u0 || v0) return Regime::MixedBoundary;
  if (u > 0.0 && v < 0.0) return Regime::ExclusionYWins;
  if (u < 0.0 && v > 0.0) return Regime::ExclusionXWins;
  if (u > 0.0 && v > 0.0) return Regime::Bistable;
  return Regime::Coexistence;
}

double nullcline_h(const ModelParams& p, double x) {
  return (1.0 - x / p.K) / p.alpha;
}

double nullcline_k(const ModelParams& p, double x) {
  return p.L * (1.0 - p.beta * x);
}

EquilibriumSet equilibria(const ModelParams& p) {
  EquilibriumSet eq;
  eq.E0 = {0.0, 0.0};
  eq.EK = {p.K, 0.0};
  eq.EL = {0.0, p.L};
  const Regime g = classify_regime(p);
  eq.line = (g == Regime::DegenerateLine);
  if (g == Regime::Bistable || g == Regime::Coexistence) {
    const double d = p.alpha * p.beta * p.K * p.L - 1.0;
    eq.Estar = State{p.K * (p.alpha * p.L - 1.0) / d, p.L * (p.beta * p.K - 1.0) / d};
  }
  return eq;
}

State step_map(const ModelParams& p, double mu, const State& s) {
  // For huge mu both numerator and denominator are scaled by 1/mu, avoiding
  // overflow while computing the same rational value.
  if (mu > 1e8) {
    const double inv = 1.0 / mu;
    const double gx = p.r * (s.x / p.K + p.alpha * s.y);
    const double gy = p.s * (s.y / p.L + p.beta * s.x);
    return {s.x * (inv + p.r) / (inv + gx), s.y * (inv + p.s) / (inv + gy)};
  }
  const double dx = 1.0 + p.r * mu * (s.x / p.K + p.alpha * s.y);
  const double dy = 1.0 + p.s * mu * (s.y / p.L + p.beta * s.x);
  return {s.x * (1.0 + p.r * mu) / dx, s.y * (1.0 + p.s * mu) / dy};
}

State vector_field(const ModelParams& p, double mu, const State& s) {
  const double gx = p.r * (s.x / p.K + p.alpha * s.y);
  const double gy = p.s * (s.y / p.L + p.beta * s.x);
  const double fx = p.r * s.x * (1.0 - s.x / p.K - p.alpha * s.y);
  const double fy = p.s * s.y * (1.0 - s.y / p.L - p.beta * s.x);
  if (mu > 1e8) {
    const double inv = 1.0 / mu;
    return {fx * inv / (inv + gx), fy * inv / (inv + gy)};
  }
  return {fx / (1.0 + mu * gx), fy / (1.0 + mu * gy)};
}

double logistic_closed_form(double r, double cap, const TimeScale& ts, double t0,
                            double z0, double t) {
  if (!(std::isfinite(r) && r > 0.0) || !(std::isfinite(cap) && cap > 0.0)) {
    throw ConfigInvalid("logistic: rate and capacity must be finite and positive");
  }
  if (!(z0 >= 0.0)) throw ConfigInvalid("logistic: z0 must be nonnegative");
  if (z0 == 0.0) return 0.0;
  // cap*z0*e/(cap + z0*(e - 1)) rewritten with em = 1/e evaluated factor-wise,
  // so the value stays finite when e overflows on fast-growing scales.
  const double em = exp_ominus_ts(ts, r, t, t0);
  return cap * z0 / (z0 + (cap - z0) * em);
}

double boundedness_envelope(double r, double cap, const TimeScale& ts, double t0,
                            double x0, double t) {
  if (!(std::isfinite(r) && r > 0.0) || !(std::isfinite(cap) && cap > 0.0)) {
    throw ConfigInvalid("envelope: rate and capacity must be finite and positive");
  }
  if (!(x0 >= 0.0)) throw ConfigInvalid("envelope: x0 must be nonnegative");
  if (x0 == 0.0) return 0.0;
  const double em = exp_ominus_ts(ts, r, t, t0);
  return cap * x0 / (x0 * (1.0 - em) + cap * em);
}

}  // namespace tslv
