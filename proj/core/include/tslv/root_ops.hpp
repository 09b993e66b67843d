#pragma once

#include <array>
#include <vector>

#include "tslv/model.hpp"

namespace tslv {

// Which nullcline a root-operator tracks: L_h(mu,x,y) = y^sigma - h(x^sigma),
// L_k = y^sigma - k(x^sigma). Zero iff the image of (x,y) lands on the curve.
enum class Nullcline { H, K };

// Rational-form evaluation of a root-operator. With
//   P = K + r mu x + alpha r mu K y,   Q = L + beta s mu L x + s mu y,
// the operator is a ratio of polynomials in mu:
//   L_h = N_a / (alpha P Q),   N_a = a2 mu^2 + a1 mu + a0
//   L_k = L N_b / (P Q),       N_b = b2 mu^2 + b1 mu + b0
// The denominator P*Q is strictly positive for nonnegative states, so the
// sign of the operator equals the sign of its numerator.
struct RootOperatorEval {
  double value = 0.0;                       // L_h or L_k
  double numerator = 0.0;                   // c2 mu^2 + c1 mu + c0
  std::array<double, 3> coeffs{0, 0, 0};    // {c0, c1, c2}
  double denominator = 0.0;                 // P * Q, > 0
};

// Numerator coefficients of L_h as a quadratic in mu:
//   a0 = L (x - K + alpha y K)
//   a1 = beta s L x (x-K) + y (s (x-K) + alpha L (r (x-K) + s K))
//        + r alpha^2 y^2 K L
//   a2 = alpha r s y (y K (alpha L - 1) + x L (1 - beta K))
std::array<double, 3> coeffs_a(const ModelParams& p, const State& s);

// Numerator coefficients of L_k as a quadratic in mu:
//   b0 = K (y - k(x))
//   b1 = s x beta K (y - k(x)) + r x L (beta K - 1) + alpha r y K (y - L)
//        + r x y
//   b2 = r s beta x (L x (beta K - 1) + K y (1 - alpha L))
std::array<double, 3> coeffs_b(const ModelParams& p, const State& s);

RootOperatorEval eval_Lh(const ModelParams& p, double mu, const State& s);
RootOperatorEval eval_Lk(const ModelParams& p, double mu, const State& s);

// Direct route through the step map, for cross-checking the rational form.
double eval_Lh_direct(const ModelParams& p, double mu, const State& s);
double eval_Lk_direct(const ModelParams& p, double mu, const State& s);

struct RootCurvePoint {
  double x = 0.0;
  double y = 0.0;
};

// For each grid x, every y >= 0 with numerator(x, y) = 0 at the given mu: the
// preimage curve of the nullcline under one recursion step. The numerator is
// an exact quadratic in y for fixed x and mu; roots are found by the stable
// quadratic formula with a linear fallback when the leading coefficient is
// below 1e-14. A negative discriminant contributes no points.
std::vector<RootCurvePoint> root_curve(const ModelParams& p, double mu,
                                       Nullcline which,
                                       const std::vector<double>& x_grid);

}  // namespace tslv
