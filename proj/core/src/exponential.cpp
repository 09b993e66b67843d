#include "tslv/exponential.hpp"

#include <cmath>
#include <sstream>

#include "tslv/errors.hpp"

namespace tslv {

namespace {

[[noreturn]] void not_regressive(double p, double t, double mu) {
  std::ostringstream os;
  os.precision(17);
  os << "1 + mu*p vanishes (p = " << p << ", mu = " << mu << ", t = " << t << ")";
  throw NotRegressive(os.str());
}

// Product over the scattered points of [from, to) plus the total dense
// length. With ominus the factor-wise reciprocal (1 + mu*p)^-1 and exp(-p*L)
// are used, so the reciprocal identity holds exactly factor by factor.
double walk(const TimeScale& ts, double p, double from, double to, bool ominus) {
  double prod = 1.0;
  double dense_len = 0.0;
  double t = from;
  while (t < to - membership_tol(to)) {
    const ScaleStep st = ts.next_step(t);
    if (st.dense) {
      const double end = std::min(st.until, to);
      dense_len += end - t;
      t = end;
    } else {
      const double mu = st.until - t;
      const double f = 1.0 + mu * p;
      if (std::abs(f) <= 1e-12) not_regressive(p, t, mu);
      prod *= ominus ? 1.0 / f : f;
      t = st.until;
    }
  }
  return prod * std::exp((ominus ? -p : p) * dense_len);
}

void require_point(const TimeScale& ts, double t, const char* name) {
  if (!ts.contains(t)) {
    std::ostringstream os;
    os.precision(17);
    os << name << " = " << t << " is not a point of the time scale";
    throw PointNotInScale(os.str());
  }
}

}  // namespace

double circle_minus(double z, double mu) {
  const double f = 1.0 + mu * z;
  if (std::abs(f) <= 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "circle_minus: 1 + mu*z vanishes (z = " << z << ", mu = " << mu << ")";
    throw NotRegressive(os.str());
  }
  return -z / f;
}

double exp_ts(const TimeScale& ts, double p, double t, double t0) {
  require_point(ts, t, "t");
  require_point(ts, t0, "t0");
  if (t >= t0) return walk(ts, p, t0, t, false);
  return 1.0 / walk(ts, p, t, t0, false);
}

double exp_ominus_ts(const TimeScale& ts, double p, double t, double t0) {
  require_point(ts, t, "t");
  require_point(ts, t0, "t0");
  if (t >= t0) return walk(ts, p, t0, t, true);
  return 1.0 / walk(ts, p, t, t0, true);
}

}  // namespace tslv
