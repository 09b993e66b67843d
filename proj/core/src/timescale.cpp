#include "tslv/timescale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "tslv/errors.hpp"

namespace tslv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void not_in_scale(double t) {
  std::ostringstream os;
  os.precision(17);
  os << "t = " << t << " is not a point of the time scale";
  throw PointNotInScale(os.str());
}

}  // namespace

double membership_tol(double t) {
  return 1e-12 * std::max(1.0, std::abs(t));
}

TimeScale TimeScale::reals() {
  TimeScale ts;
  ts.kind_ = Kind::Reals;
  return ts;
}

TimeScale TimeScale::lattice(double step, double origin) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ConfigInvalid("lattice: step must be finite and positive");
  }
  if (!std::isfinite(origin)) {
    throw ConfigInvalid("lattice: origin must be finite");
  }
  TimeScale ts;
  ts.kind_ = Kind::Lattice;
  ts.step_ = step;
  ts.origin_ = origin;
  return ts;
}

TimeScale TimeScale::quantum(double q, double start) {
  if (!(q > 1.0) || !std::isfinite(q)) {
    throw ConfigInvalid("quantum: q must be finite and greater than 1");
  }
  if (!(start > 0.0) || !std::isfinite(start)) {
    throw ConfigInvalid("quantum: start must be finite and positive");
  }
  TimeScale ts;
  ts.kind_ = Kind::Quantum;
  ts.q_ = q;
  ts.start_ = start;
  return ts;
}

TimeScale TimeScale::pattern(std::vector<PatternElement> elements, double period,
                             double anchor) {
  if (elements.empty()) {
    throw ConfigInvalid("pattern: needs at least one element");
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigInvalid("pattern: period must be finite and positive");
  }
  if (!std::isfinite(anchor)) {
    throw ConfigInvalid("pattern: anchor must be finite");
  }
  std::sort(elements.begin(), elements.end(),
            [](const PatternElement& l, const PatternElement& r) { return l.a < r.a; });
  const double lo = anchor;
  const double hi = anchor + period;
  double prev_end = -kInf;
  for (const PatternElement& e : elements) {
    if (!std::isfinite(e.a) || !std::isfinite(e.b) || !(e.b >= e.a)) {
      throw ConfigInvalid("pattern: element bounds must be finite with a <= b");
    }
    if (e.a < lo - membership_tol(lo) || e.b > hi + membership_tol(hi)) {
      throw ConfigInvalid("pattern: element outside [anchor, anchor + period]");
    }
    if (e.a <= prev_end + membership_tol(prev_end)) {
      throw ConfigInvalid("pattern: elements must be disjoint with positive gaps");
    }
    prev_end = e.b;
  }
  TimeScale ts;
  ts.kind_ = Kind::Pattern;
  ts.elements_ = std::move(elements);
  ts.period_ = period;
  ts.anchor_ = anchor;
  return ts;
}

std::size_t TimeScale::locate_pattern(double t, double* period_base) const {
  const double tol = membership_tol(t);
  if (t < elements_.front().a - tol) not_in_scale(t);
  const double n = std::floor((t - anchor_) / period_);
  // Candidate shifts absorb rounding when t sits on a period boundary.
  for (double shift : {n - 1.0, n, n + 1.0}) {
    if (shift < -0.5) continue;
    const double base = anchor_ + shift * period_;
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      const double a = base + (elements_[i].a - anchor_);
      const double b = base + (elements_[i].b - anchor_);
      if (t >= a - tol && t <= b + tol) {
        *period_base = base;
        return i;
      }
    }
  }
  not_in_scale(t);
}

bool TimeScale::contains(double t) const {
  if (!std::isfinite(t)) return false;
  switch (kind_) {
    case Kind::Reals:
      return true;
    case Kind::Lattice: {
      const double n = std::round((t - origin_) / step_);
      return std::abs(t - (origin_ + n * step_)) <= membership_tol(t);
    }
    case Kind::Quantum: {
      if (!(t > 0.0)) return false;
      const double n = std::round(std::log(t / start_) / std::log(q_));
      if (n < -0.5) return false;
      return std::abs(t - start_ * std::pow(q_, n)) <= membership_tol(t);
    }
    case Kind::Pattern: {
      double base = 0.0;
      try {
        locate_pattern(t, &base);
        return true;
      } catch (const PointNotInScale&) {
        return false;
      }
    }
  }
  return false;
}

ScaleStep TimeScale::next_step(double t) const {
  switch (kind_) {
    case Kind::Reals:
      return {true, kInf};
    case Kind::Lattice: {
      if (!contains(t)) not_in_scale(t);
      return {false, t + step_};
    }
    case Kind::Quantum: {
      if (!contains(t)) not_in_scale(t);
      return {false, t * q_};
    }
    case Kind::Pattern:
      break;
  }

  const std::size_t n = elements_.size();
  double base = 0.0;
  std::size_t i = locate_pattern(t, &base);
  const double tol = membership_tol(t);

  // Absolute start of the element after index j whose period begins at bj.
  auto next_start = [&](std::size_t j, double bj) {
    if (j + 1 < n) return bj + (elements_[j + 1].a - anchor_);
    return bj + period_ + (elements_[0].a - anchor_);
  };
  auto advance = [&](std::size_t j, double bj, std::size_t* jn, double* bn) {
    if (j + 1 < n) {
      *jn = j + 1;
      *bn = bj;
    } else {
      *jn = 0;
      *bn = bj + period_;
    }
  };

  // Extends a dense run that is inside element j (period base bj) while the
  // following element begins exactly at the running end. A merge spanning a
  // full period repeats forever, so the run is infinite.
  auto merged_end = [&](std::size_t j, double bj) {
    double end = bj + (elements_[j].b - anchor_);
    const double start_ref = end;
    while (true) {
      const double ns = next_start(j, bj);
      if (ns > end + membership_tol(end)) return end;
      std::size_t jn;
      double bn;
      advance(j, bj, &jn, &bn);
      if (!elements_[jn].is_interval()) return end;
      const double nb = bn + (elements_[jn].b - anchor_);
      if (!(nb > end)) return end;
      end = nb;
      j = jn;
      bj = bn;
      if (end - start_ref >= period_) return kInf;
    }
  };

  const double eb = base + (elements_[i].b - anchor_);
  if (elements_[i].is_interval() && t < eb - tol) {
    return {true, merged_end(i, base)};
  }

  // t sits at an isolated point or at an interval end.
  const double ns = next_start(i, base);
  if (ns <= t + tol) {
    // The next element begins exactly here; if it is an interval the run
    // continues through t.
    std::size_t jn;
    double bn;
    advance(i, base, &jn, &bn);
    if (elements_[jn].is_interval()) {
      return {true, merged_end(jn, bn)};
    }
  }
  return {false, ns};
}

double TimeScale::sigma(double t) const {
  const ScaleStep st = next_step(t);
  return st.dense ? t : st.until;
}

double TimeScale::graininess(double t) const {
  const ScaleStep st = next_step(t);
  return st.dense ? 0.0 : st.until - t;
}

PointClass TimeScale::classify_point(double t) const {
  return next_step(t).dense ? PointClass::RightDense : PointClass::RightScattered;
}

std::optional<double> TimeScale::dense_run_end(double t) const {
  const ScaleStep st = next_step(t);
  if (!st.dense) return std::nullopt;
  return st.until;
}

double TimeScale::min_point() const {
  switch (kind_) {
    case Kind::Reals:
    case Kind::Lattice:
      return -kInf;
    case Kind::Quantum:
      return start_;
    case Kind::Pattern:
      return elements_.front().a;
  }
  return -kInf;
}

bool TimeScale::purely_discrete() const {
  switch (kind_) {
    case Kind::Reals:
      return false;
    case Kind::Lattice:
    case Kind::Quantum:
      return true;
    case Kind::Pattern:
      return std::none_of(elements_.begin(), elements_.end(),
                          [](const PatternElement& e) { return e.is_interval(); });
  }
  return false;
}

std::vector<GridEntry> grid(const TimeScale& ts, double t0, const GridBudget& budget) {
  if (!ts.contains(t0)) not_in_scale(t0);
  const bool has_h = budget.horizon.has_value();
  const bool has_m = budget.max_entries.has_value();
  if (!has_h && !has_m) {
    throw ConfigInvalid("grid: budget needs a horizon or max_entries");
  }
  if (has_h && (!std::isfinite(*budget.horizon) || *budget.horizon < t0)) {
    throw ConfigInvalid("grid: horizon must be finite and at or after t0");
  }
  if (has_m && *budget.max_entries == 0) {
    throw ConfigInvalid("grid: max_entries must be positive");
  }
  const double H = has_h ? *budget.horizon : kInf;

  std::vector<GridEntry> out;
  double t = t0;
  while (true) {
    if (t > H + membership_tol(H)) break;
    if (has_m && out.size() == *budget.max_entries) {
      if (has_h) {
        throw BudgetExceeded("grid: max_entries exhausted before the horizon");
      }
      break;
    }
    const ScaleStep st = ts.next_step(t);
    if (st.dense) {
      if (std::isinf(st.until) && !has_h) {
        throw ConfigInvalid("grid: a scale with unbounded dense runs needs a horizon");
      }
      if (st.until > H) {
        out.push_back({t, H});
        break;
      }
      out.push_back({t, st.until});
      t = ts.sigma(st.until);
    } else {
      out.push_back({t, t});
      t = st.until;
    }
  }
  return out;
}

}  // namespace tslv
