#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace tslv {

enum class PointClass { RightDense, RightScattered };

// What lies immediately ahead of a scale point: either a jump to the next
// point (dense == false, until == sigma(t) > t) or a maximal dense run
// (dense == true, until == run end, +infinity on the reals).
struct ScaleStep {
  bool dense = false;
  double until = 0.0;
};

// One element of a repeating pattern: an isolated point (b == a) or a closed
// interval [a, b]. Positions are absolute within the first period.
struct PatternElement {
  double a = 0.0;
  double b = 0.0;
  bool is_interval() const { return b > a; }
};

// Membership comparisons use an absolute tolerance of 1e-12, scaled by |t|
// once |t| exceeds 1 (double resolution at large quantum points is far
// coarser than 1e-12).
double membership_tol(double t);

// A time scale: a closed subset of the reals, unbounded above, from one of
// four generators.
//
//   reals()              the whole real line
//   lattice(h, origin)   {origin + n*h : n integer}
//   quantum(q, start)    {start * q^n : n = 0, 1, 2, ...}, q > 1, start > 0
//   pattern(...)         a periodic union of points and closed intervals
//
// A pattern scale repeats its elements with the given period starting at the
// anchor: T = union over n >= 0 of (elements + n*period). The anchor is the
// smallest point. Adjacent runs merge: if an interval ends exactly where the
// next element begins, the point between them is right-dense.
class TimeScale {
 public:
  enum class Kind { Reals, Lattice, Quantum, Pattern };

  // Default-constructs the real line (same as reals()).
  TimeScale() = default;

  static TimeScale reals();
  static TimeScale lattice(double step, double origin = 0.0);
  static TimeScale quantum(double q, double start = 1.0);
  static TimeScale pattern(std::vector<PatternElement> elements, double period,
                           double anchor);

  Kind kind() const { return kind_; }

  bool contains(double t) const;

  // Forward jump sigma(t) = inf{s in T : s > t}; equals t at right-dense
  // points. Throws PointNotInScale if t is not in the scale.
  double sigma(double t) const;

  // Graininess mu(t) = sigma(t) - t.
  double graininess(double t) const;

  PointClass classify_point(double t) const;

  // Single dispatch used by walkers: what follows t. Throws PointNotInScale
  // if t is not in the scale.
  ScaleStep next_step(double t) const;

  // For a right-dense t, the end of the maximal run [t, e] of right-dense
  // points starting at t (+infinity on the reals). nullopt when t is
  // right-scattered.
  std::optional<double> dense_run_end(double t) const;

  // Smallest point of the scale; -infinity for reals and lattice.
  double min_point() const;

  // True when the scale contains no dense runs (lattice, quantum, or a
  // pattern made of isolated points only).
  bool purely_discrete() const;

  // Generator accessors (valid only for the matching kind).
  double lattice_step() const { return step_; }
  double lattice_origin() const { return origin_; }
  double quantum_q() const { return q_; }
  double quantum_start() const { return start_; }
  const std::vector<PatternElement>& pattern_elements() const { return elements_; }
  double pattern_period() const { return period_; }
  double pattern_anchor() const { return anchor_; }

 private:
  // Locates t inside the pattern: element index and the absolute start of the
  // containing period. Throws PointNotInScale when t is not in the scale.
  std::size_t locate_pattern(double t, double* period_base) const;

  Kind kind_ = Kind::Reals;
  double step_ = 1.0, origin_ = 0.0;   // lattice
  double q_ = 2.0, start_ = 1.0;       // quantum
  std::vector<PatternElement> elements_;  // pattern
  double period_ = 0.0, anchor_ = 0.0;
};

// One grid entry: an isolated (right-scattered) point when b == a, otherwise
// a maximal dense segment [a, b]. Segment interiors are right-dense; the
// segment end b is a scale point whose class depends on what follows it.
struct GridEntry {
  double a = 0.0;
  double b = 0.0;
  bool is_segment() const { return b > a; }
};

// Enumeration budget. At least one bound must be set. When both are set the
// horizon is primary and exhausting max_entries first throws BudgetExceeded.
// A scale containing dense runs requires a horizon (a segment has no point
// count); max_entries alone is allowed on purely discrete scales.
struct GridBudget {
  std::optional<double> horizon;
  std::optional<std::size_t> max_entries;
};

// Enumerates the scale from t0 (inclusive) forward: isolated points and
// maximal dense segments, in increasing order. Segments are clipped to the
// horizon. Throws PointNotInScale if t0 is not in the scale, ConfigInvalid
// for an unusable budget, BudgetExceeded as described above.
std::vector<GridEntry> grid(const TimeScale& ts, double t0,
                            const GridBudget& budget);

}  // namespace tslv
