#include "tslv/root_ops.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tslv/model.hpp"

namespace tslv {

namespace {

// Shared denominator pieces: the step map sends (x, y) to
// (x (1 + r mu) K / P, y (1 + s mu) L / Q) with
//   P = K + r mu x + alpha r mu K y,  Q = L + beta s mu L x + s mu y,
// both strictly positive on the closed first quadrant.
double denom_P(const ModelParams& p, double mu, const State& s) {
  return p.K + p.r * mu * s.x + p.alpha * p.r * mu * p.K * s.y;
}

double denom_Q(const ModelParams& p, double mu, const State& s) {
  return p.L + p.beta * p.s * mu * p.L * s.x + p.s * mu * s.y;
}

std::vector<double> quad_roots(double A, double B, double C) {
  if (std::abs(A) < 1e-14) {
    if (std::abs(B) < 1e-14) return {};
    return {-C / B};
  }
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return {};
  const double sq = std::sqrt(disc);
  const double q = -0.5 * (B + std::copysign(sq, B));
  if (q == 0.0) return {0.0};  // B = C = 0: double root at zero
  std::vector<double> out{q / A, C / q};
  std::sort(out.begin(), out.end());
  if (out.size() == 2 &&
      std::abs(out[1] - out[0]) <= 1e-12 * std::max(1.0, std::abs(out[1]))) {
    out.pop_back();
  }
  return out;
}

}  // namespace

std::array<double, 3> coeffs_a(const ModelParams& p, const State& s) {
  const double r = p.r, sr = p.s, al = p.alpha, be = p.beta, K = p.K, L = p.L;
  const double x = s.x, y = s.y;
  const double a0 = L * (x - K + al * y * K);
  const double a1 = be * sr * L * x * (x - K) +
                    y * (sr * (x - K) + al * L * (r * (x - K) + sr * K)) +
                    r * al * al * y * y * K * L;
  const double a2 = al * r * sr * y * (y * K * (al * L - 1.0) + x * L * (1.0 - be * K));
  return {a0, a1, a2};
}

std::array<double, 3> coeffs_b(const ModelParams& p, const State& s) {
  const double r = p.r, sr = p.s, al = p.alpha, be = p.beta, K = p.K, L = p.L;
  const double x = s.x, y = s.y;
  const double ymk = y - L * (1.0 - be * x);  // y - k(x)
  const double b0 = K * ymk;
  const double b1 = sr * x * be * K * ymk + r * x * L * (be * K - 1.0) +
                    al * r * y * K * (y - L) + r * x * y;
  const double b2 = r * sr * be * x * (L * x * (be * K - 1.0) + K * y * (1.0 - al * L));
  return {b0, b1, b2};
}

RootOperatorEval eval_Lh(const ModelParams& p, double mu, const State& s) {
  RootOperatorEval ev;
  ev.coeffs = coeffs_a(p, s);
  ev.numerator = (ev.coeffs[2] * mu + ev.coeffs[1]) * mu + ev.coeffs[0];
  ev.denominator = denom_P(p, mu, s) * denom_Q(p, mu, s);
  ev.value = ev.numerator / (p.alpha * ev.denominator);
  return ev;
}

RootOperatorEval eval_Lk(const ModelParams& p, double mu, const State& s) {
  RootOperatorEval ev;
  ev.coeffs = coeffs_b(p, s);
  ev.numerator = (ev.coeffs[2] * mu + ev.coeffs[1]) * mu + ev.coeffs[0];
  ev.denominator = denom_P(p, mu, s) * denom_Q(p, mu, s);
  ev.value = p.L * ev.numerator / ev.denominator;
  return ev;
}

double eval_Lh_direct(const ModelParams& p, double mu, const State& s) {
  const State n = step_map(p, mu, s);
  return n.y - nullcline_h(p, n.x);
}

double eval_Lk_direct(const ModelParams& p, double mu, const State& s) {
  const State n = step_map(p, mu, s);
  return n.y - nullcline_k(p, n.x);
}

std::vector<RootCurvePoint> root_curve(const ModelParams& p, double mu,
                                       Nullcline which,
                                       const std::vector<double>& x_grid) {
  p.validate();
  std::vector<RootCurvePoint> out;
  for (double x : x_grid) {
    // The numerator is an exact quadratic in y for fixed (x, mu); recover its
    // coefficients from three evaluations.
    auto N = [&](double y) {
      const auto c = (which == Nullcline::H) ? coeffs_a(p, {x, y}) : coeffs_b(p, {x, y});
      return (c[2] * mu + c[1]) * mu + c[0];
    };
    const double n0 = N(0.0), n1 = N(1.0), n2 = N(2.0);
    const double A = 0.5 * (n2 - 2.0 * n1 + n0);
    const double B = n1 - n0 - A;
    const double C = n0;
    for (double y : quad_roots(A, B, C)) {
      if (y < -1e-12) continue;
      if (y <= 0.0) y = 0.0;  // clamp tiny negatives and normalize -0
      // Accept only if both evaluation routes vanish: the rational form alone
      // decays at huge y (numerator and denominator both grow ~y^2), which
      // would let a cancellation artifact through.
      const RootOperatorEval ev =
          (which == Nullcline::H) ? eval_Lh(p, mu, {x, y}) : eval_Lk(p, mu, {x, y});
      const double dir = (which == Nullcline::H) ? eval_Lh_direct(p, mu, {x, y})
                                                 : eval_Lk_direct(p, mu, {x, y});
      const double res = std::max(std::abs(ev.value), std::abs(dir));
      if (res <= 1e-9 * std::max(1.0, std::abs(x))) {
        out.push_back({x, y});
      }
    }
  }
  return out;
}

}  // namespace tslv
