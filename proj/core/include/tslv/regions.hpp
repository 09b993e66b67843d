#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tslv/root_ops.hpp"

namespace tslv {

// Open-region labels. Omega1..Omega3 partition the positive quadrant in the
// exclusion regimes (1 below both nullclines, 2 between, 3 above both).
// R1..R6 + B0 + B1 partition it in the bistable regime, S1..S6 + B0 + B1 in
// the coexistence regime, with B0 = [0,x*]x[0,y*] and B1 = {x>=x*, y>=y*}.
// AboveLine/BelowLine/OnLine apply in the degenerate regime where both
// nullclines coincide.
enum class RegionLabel {
  Omega1, Omega2, Omega3,
  R1, R2, R3, R4, R5, R6,
  S1, S2, S3, S4, S5, S6,
  B0, B1,
  AboveLine, BelowLine, OnLine,
};

const char* region_label_name(RegionLabel label);

// Classification of one point: an open-region label, or boundary flags when
// the point sits within kRegionBoundaryTol of a nullcline or an axis (flags
// and labels are mutually exclusive; flags may combine with each other).
struct Region {
  std::optional<RegionLabel> label;
  bool on_nullcline_h = false;
  bool on_nullcline_k = false;
  bool on_axis = false;
};

inline constexpr double kRegionBoundaryTol = 1e-10;

std::string region_name(const Region& region);

// Labels s within the region family of the active regime. Throws
// RegimeMismatch for MixedBoundary (no family is defined there).
Region classify_region(const ModelParams& p, const State& s);

// One machine-checkable sign claim: the named operator has the given strict
// sign everywhere in the claimed region. contains(s, margin) is the region
// predicate shrunk by `margin` away from every boundary (and from E* where
// the claim excludes it).
struct SignClaim {
  std::string id;         // "I.a", "III.c", "D.below", ...
  Nullcline op;
  int sign;               // +1 or -1
  std::function<bool(const State&, double margin)> contains;
};

// The claims for the active regime: 2 in each exclusion regime, 4 in the
// bistable and coexistence regimes, 2 in the degenerate regime. Throws
// RegimeMismatch for MixedBoundary.
std::vector<SignClaim> sign_lemma_table(const ModelParams& p);

// Closed regions that trajectories never leave once entered.
enum class InvariantRegion { Omega2, R2T, R5T, S2T, S5T };

const char* invariant_region_name(InvariantRegion region);

// Signed depth of s inside the closed region: the smallest slack over the
// region's defining inequalities (> 0 strictly inside, < 0 outside).
double invariant_region_depth(const ModelParams& p, InvariantRegion region,
                              const State& s);

// Membership in the closure, with tolerance on every boundary. Throws
// RegimeMismatch when the region does not exist in the regime of p.
bool in_invariant_region(const ModelParams& p, InvariantRegion region,
                         const State& s, double tol = kRegionBoundaryTol);

// The invariant regions defined in the regime of p (empty for degenerate
// and mixed-boundary parameter sets).
std::vector<InvariantRegion> invariant_regions_for(const ModelParams& p);

}  // namespace tslv
