#pragma once

#include <optional>

#include "tslv/timescale.hpp"

namespace tslv {

// Two-species competition parameters. All six must be finite and positive.
struct ModelParams {
  double r = 1.0;      // growth rate of x
  double s = 1.0;      // growth rate of y
  double alpha = 1.0;  // competitive pressure of y on x
  double beta = 1.0;   // competitive pressure of x on y
  double K = 1.0;      // carrying capacity of x
  double L = 1.0;      // carrying capacity of y

  void validate() const;  // throws ConfigInvalid
};

struct State {
  double x = 0.0;
  double y = 0.0;
};

// Long-run outcome classes, decided by the signs of alpha*L - 1 and
// beta*K - 1 (tolerance kRegimeTol on each).
enum class Regime {
  ExclusionYWins,   // alpha*L > 1, beta*K < 1: y excludes x
  ExclusionXWins,   // alpha*L < 1, beta*K > 1: x excludes y
  Bistable,         // both > 1: outcome depends on the start
  Coexistence,      // both < 1: interior equilibrium attracts
  DegenerateLine,   // both equal 1: a whole line of equilibria
  MixedBoundary,    // exactly one equality
};

inline constexpr double kRegimeTol = 1e-12;

const char* regime_name(Regime r);

struct EquilibriumSet {
  State E0;                    // extinction
  State EK;                    // (K, 0)
  State EL;                    // (0, L)
  std::optional<State> Estar;  // interior equilibrium, present iff feasible
  bool line = false;           // degenerate: every point of y=h(x), 0<=x<=K
};

Regime classify_regime(const ModelParams& p);
EquilibriumSet equilibria(const ModelParams& p);

// Nullclines of the continuous field: x' = 0 on y = h(x), y' = 0 on y = k(x).
double nullcline_h(const ModelParams& p, double x);
double nullcline_k(const ModelParams& p, double x);

// One exact step of the recursion at graininess mu >= 0:
//   x^sigma = x (1 + r mu) / (1 + r mu (x/K + alpha y))
//   y^sigma = y (1 + s mu) / (1 + s mu (y/L + beta x))
// Denominators are >= 1 for nonnegative states, so nonnegativity is preserved
// in floating point. For mu > 1e8 the quotient is evaluated in the divided
// form (numerator and denominator scaled by 1/mu) to stay finite.
State step_map(const ModelParams& p, double mu, const State& s);

// Delta derivative at graininess mu (the continuous field when mu = 0):
//   x^Delta = r x (1 - x/K - alpha y) / (1 + r mu (x/K + alpha y))
// and symmetrically for y. Satisfies step_map == s + mu * vector_field.
State vector_field(const ModelParams& p, double mu, const State& s);

// Single-species logistic solution on an arbitrary scale:
//   z(t) = e_r(t, t0) cap z0 / (cap + z0 (e_r(t, t0) - 1)).
double logistic_closed_form(double r, double cap, const TimeScale& ts,
                            double t0, double z0, double t);

// Upper bound for one species under competition, from the same start x0 > 0:
//   x(t) <= cap x0 / (x0 (1 - e) + cap e),  e = e_{ominus r}(t, t0).
double boundedness_envelope(double r, double cap, const TimeScale& ts,
                            double t0, double x0, double t);

}  // namespace tslv
