#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tslv/simulate.hpp"

namespace tslv {

// The verifier's fixed generator: std::mt19937_64, with uniform doubles built
// from the top 53 bits of each draw ((x >> 11) * 2^-53). Both pieces are
// bit-portable, so reports reproduce byte-identically across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Stream derived from (seed, id): seed XOR FNV-1a(id). Independent streams
  // make suite execution order and parallelism irrelevant to results.
  Rng(std::uint64_t seed, const std::string& id);

  std::uint64_t next() { return gen_(); }

  double uniform01();  // in [0, 1)
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 gen_;
};

struct CheckReport {
  std::string check_id;
  long long samples = 0;
  long long violations = 0;
  // Smallest slack observed over all samples; a negative value is the depth
  // of the worst violation.
  double worst_margin = std::numeric_limits<double>::infinity();
  double elapsed_seconds = 0.0;
  bool pass = false;  // pass iff violations == 0
  std::string detail;  // first-violation diagnostics, empty on pass
};

// Margin kept between samples and region boundaries (the lemmas allow
// equality exactly on boundaries and at E*).
inline constexpr double kSignMargin = 1e-8;

// Evaluator signature for the mutation self-test hooks: returns the operator
// value at (p, mu, s).
using OperatorFn = std::function<double(const ModelParams&, double, const State&)>;
// Step signature for the same purpose.
using StepFn = std::function<State(const ModelParams&, double, const State&)>;

// Samples each sign claim's region uniformly (rejection inside the box
// [0, 2 max(K, 1/beta)] x [0, 2 max(L, 1/alpha)], margin kSignMargin from
// boundaries) and asserts the claimed strict sign at every mu in mu_set.
CheckReport check_sign_lemmas(const ModelParams& p, long long n_samples,
                              const std::vector<double>& mu_set,
                              std::uint64_t seed);
CheckReport check_sign_lemmas(const ModelParams& p, long long n_samples,
                              const std::vector<double>& mu_set,
                              std::uint64_t seed, const OperatorFn& lh,
                              const OperatorFn& lk);

// Samples starts inside the closed region (interior plus its boundary arcs),
// simulates each, and asserts the trajectory never leaves the closure
// (tolerance kRegionBoundaryTol).
CheckReport check_invariance(const ModelParams& p, const TimeScale& ts,
                             InvariantRegion region, long long n_starts,
                             const SimBudget& budget, std::uint64_t seed);
CheckReport check_invariance(const ModelParams& p, const TimeScale& ts,
                             InvariantRegion region, long long n_starts,
                             const SimBudget& budget, std::uint64_t seed,
                             const StepFn& step);

// Random positive starts must reach the regime-predicted limit set: I -> EL,
// II -> EK, IV -> Estar, III -> one of {EK, EL, Estar} and never E0,
// degenerate -> a point of the line y = h(x), 0 <= x <= K.
CheckReport check_global_convergence(const ModelParams& p, const TimeScale& ts,
                                     long long n_starts,
                                     const SimBudget& budget, double tol,
                                     std::uint64_t seed);
CheckReport check_global_convergence(const ModelParams& p, const TimeScale& ts,
                                     long long n_starts,
                                     const SimBudget& budget, double tol,
                                     std::uint64_t seed, const StepFn& step);

// Samples B0 \ {E*} and asserts no step_map image lands in the interior of
// B1 = {x >= x*, y >= y*} (tolerance 1e-12 on each coordinate), at every mu
// in mu_set. Requires a regime with feasible E* (bistable or coexistence).
CheckReport check_box_exclusion(const ModelParams& p, long long n_samples,
                                const std::vector<double>& mu_set,
                                std::uint64_t seed);
CheckReport check_box_exclusion(const ModelParams& p, long long n_samples,
                                const std::vector<double>& mu_set,
                                std::uint64_t seed, const StepFn& step);

struct SuiteResult {
  std::vector<CheckReport> reports;
  bool all_pass = true;
};

// Runs every check declared in a JSON suite config: an object
//   {"seed": 0, "checks": [{"check_id": "sign_lemmas", "label": ...,
//    "params": {...}, ...}, ...]}
// where check_id is one of sign_lemmas | invariance | global_convergence |
// box_exclusion. An unknown check_id or malformed entry throws ConfigInvalid.
// seed_override replaces the config seed when present.
SuiteResult run_suite(const std::string& config_json,
                      std::optional<std::uint64_t> seed_override = {});

std::string suite_report_json(const SuiteResult& result);
std::string suite_report_table(const SuiteResult& result);

}  // namespace tslv
