#pragma once

#include "tslv/timescale.hpp"

namespace tslv {

// Circle minus: (ominus z)(mu) = -z / (1 + mu z). Throws NotRegressive when
// 1 + mu z vanishes (within 1e-12).
double circle_minus(double z, double mu);

// Time-scale exponential e_p(t, t0) for constant p: the product of
// (1 + mu(tau) p) over right-scattered tau in [t0, t), times
// exp(p * total dense length in [t0, t)). Exact for constant p.
//
// Supports t < t0 via e_p(t, t0) = 1 / e_p(t0, t). Throws PointNotInScale if
// either endpoint is outside the scale, NotRegressive if a factor vanishes.
double exp_ts(const TimeScale& ts, double p, double t, double t0);

// e_{ominus p}(t, t0), evaluated factor-wise: each scattered factor is
// 1/(1 + mu p) and the dense contribution is exp(-p * length). This is an
// independent route to 1/e_p(t, t0).
double exp_ominus_ts(const TimeScale& ts, double p, double t, double t0);

}  // namespace tslv
