#include "tslv/regions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tslv/errors.hpp"

namespace tslv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pointwise lower/upper nullcline for the exclusion regimes: in
// ExclusionYWins h lies below k on the whole quadrant, in ExclusionXWins k
// lies below h.
void exclusion_curves(const ModelParams& p, Regime g, double x, double* lower,
                      double* upper) {
  const double h = nullcline_h(p, x);
  const double k = nullcline_k(p, x);
  if (g == Regime::ExclusionYWins) {
    *lower = h;
    *upper = k;
  } else {
    *lower = k;
    *upper = h;
  }
}

}  // namespace

const char* region_label_name(RegionLabel l) {
  switch (l) {
    case RegionLabel::Omega1: return "Omega1";
    case RegionLabel::Omega2: return "Omega2";
    case RegionLabel::Omega3: return "Omega3";
    case RegionLabel::R1: return "R1";
    case RegionLabel::R2: return "R2";
    case RegionLabel::R3: return "R3";
    case RegionLabel::R4: return "R4";
    case RegionLabel::R5: return "R5";
    case RegionLabel::R6: return "R6";
    case RegionLabel::S1: return "S1";
    case RegionLabel::S2: return "S2";
    case RegionLabel::S3: return "S3";
    case RegionLabel::S4: return "S4";
    case RegionLabel::S5: return "S5";
    case RegionLabel::S6: return "S6";
    case RegionLabel::B0: return "B0";
    case RegionLabel::B1: return "B1";
    case RegionLabel::AboveLine: return "AboveLine";
    case RegionLabel::BelowLine: return "BelowLine";
    case RegionLabel::OnLine: return "OnLine";
  }
  return "?";
}

std::string region_name(const Region& reg) {
  if (reg.label) {
    std::string s = region_label_name(*reg.label);
    if (reg.on_axis) s += "|OnAxis";
    return s;
  }
  std::string s;
  auto add = [&s](const char* part) {
    if (!s.empty()) s += "|";
    s += part;
  };
  if (reg.on_nullcline_h) add("OnNullclineH");
  if (reg.on_nullcline_k) add("OnNullclineK");
  if (reg.on_axis) add("OnAxis");
  if (s.empty()) s = "Unlabeled";
  return s;
}

Region classify_region(const ModelParams& p, const State& s) {
  const Regime g = classify_regime(p);
  if (g == Regime::MixedBoundary) {
    throw RegimeMismatch(
        "region families are defined away from the regime boundaries "
        "(alpha*L = 1 or beta*K = 1)");
  }
  Region reg;
  const double tol = kRegionBoundaryTol;
  reg.on_axis = (s.x <= tol || s.y <= tol);
  const double h = nullcline_h(p, s.x);
  const double k = nullcline_k(p, s.x);
  reg.on_nullcline_h = std::abs(s.y - h) <= tol;
  reg.on_nullcline_k = std::abs(s.y - k) <= tol;

  if (g == Regime::DegenerateLine) {
    // Both nullclines coincide with the line y = h(x).
    if (reg.on_nullcline_h) {
      reg.label = RegionLabel::OnLine;
    } else {
      reg.label = (s.y > h) ? RegionLabel::AboveLine : RegionLabel::BelowLine;
    }
    return reg;
  }

  if (reg.on_nullcline_h || reg.on_nullcline_k || reg.on_axis) {
    return reg;
  }

  if (g == Regime::ExclusionYWins || g == Regime::ExclusionXWins) {
    double lower, upper;
    exclusion_curves(p, g, s.x, &lower, &upper);
    if (s.y > std::max(0.0, upper)) {
      reg.label = RegionLabel::Omega3;
    } else if (lower > 0.0 && s.y < lower) {
      reg.label = RegionLabel::Omega1;
    } else {
      reg.label = RegionLabel::Omega2;
    }
    return reg;
  }

  // Bistable and Coexistence share the saddle-box split around E*.
  const EquilibriumSet eq = equilibria(p);
  const double xs = eq.Estar->x;
  const double ys = eq.Estar->y;
  if (s.x <= xs && s.y <= ys) {
    reg.label = RegionLabel::B0;
    return reg;
  }
  if (s.x >= xs && s.y >= ys) {
    reg.label = RegionLabel::B1;
    return reg;
  }

  if (g == Regime::Bistable) {
    // h < k on (0, x*), h > k on (x*, infinity).
    if (s.x < xs) {  // y > ys here
      if (s.y < h) reg.label = RegionLabel::R1;
      else if (s.y > k) reg.label = RegionLabel::R3;
      else reg.label = RegionLabel::R2;
    } else {  // y < ys
      if (k > 0.0 && s.y < k) reg.label = RegionLabel::R4;
      else if (s.y < h) reg.label = RegionLabel::R5;
      else reg.label = RegionLabel::R6;
    }
  } else {
    // Coexistence: k < h on (0, x*), k > h on (x*, infinity).
    if (s.x < xs) {  // y > ys
      if (s.y < k) reg.label = RegionLabel::S1;
      else if (s.y > h) reg.label = RegionLabel::S3;
      else reg.label = RegionLabel::S2;
    } else {  // y < ys
      if (h > 0.0 && s.y < h) reg.label = RegionLabel::S4;
      else if (s.y < k) reg.label = RegionLabel::S5;
      else reg.label = RegionLabel::S6;
    }
  }
  return reg;
}

std::vector<SignClaim> sign_lemma_table(const ModelParams& p) {
  const Regime g = classify_regime(p);
  if (g == Regime::MixedBoundary) {
    throw RegimeMismatch("no sign table on the regime boundaries");
  }
  std::vector<SignClaim> table;
  auto h = [p](double x) { return nullcline_h(p, x); };
  auto k = [p](double x) { return nullcline_k(p, x); };

  switch (g) {
    case Regime::ExclusionYWins: {
      table.push_back({"I.a", Nullcline::H, +1, [=](const State& s, double m) {
                         return s.x > m && s.y > std::max(0.0, h(s.x)) + m;
                       }});
      table.push_back({"I.b", Nullcline::K, -1, [=](const State& s, double m) {
                         return s.x > m && s.y > m && s.y < k(s.x) - m;
                       }});
      break;
    }
    case Regime::ExclusionXWins: {
      table.push_back({"II.a", Nullcline::K, +1, [=](const State& s, double m) {
                         return s.x > m && s.y > std::max(0.0, k(s.x)) + m;
                       }});
      table.push_back({"II.b", Nullcline::H, -1, [=](const State& s, double m) {
                         return s.x > m && s.y > m && s.y < h(s.x) - m;
                       }});
      break;
    }
    case Regime::Bistable: {
      const EquilibriumSet eq = equilibria(p);
      const double xs = eq.Estar->x;
      const double ys = eq.Estar->y;
      table.push_back({"III.a", Nullcline::H, +1, [=](const State& s, double m) {
                         return s.x > m && s.x <= xs && s.y > h(s.x) + m;
                       }});
      table.push_back({"III.b", Nullcline::H, -1, [=](const State& s, double m) {
                         return s.x >= xs && s.x < p.K - m && s.y > m &&
                                s.y < h(s.x) - m;
                       }});
      table.push_back({"III.c", Nullcline::K, -1, [=](const State& s, double m) {
                         return s.x > m && s.x < xs - m && s.y >= ys &&
                                s.y < k(s.x) - m;
                       }});
      table.push_back({"III.d", Nullcline::K, +1, [=](const State& s, double m) {
                         return s.x > xs + m && s.x < p.K - m &&
                                s.y > std::max(0.0, k(s.x)) + m && s.y <= ys;
                       }});
      break;
    }
    case Regime::Coexistence: {
      const EquilibriumSet eq = equilibria(p);
      const double xs = eq.Estar->x;
      const double ys = eq.Estar->y;
      table.push_back({"IV.a", Nullcline::H, -1, [=](const State& s, double m) {
                         return s.x > m && s.x <= xs && s.y >= ys &&
                                s.y < h(s.x) - m &&
                                !(std::abs(s.x - xs) <= m && std::abs(s.y - ys) <= m);
                       }});
      table.push_back({"IV.b", Nullcline::H, +1, [=](const State& s, double m) {
                         return s.x >= xs && s.y > std::max(0.0, h(s.x)) + m &&
                                s.y <= ys &&
                                !(std::abs(s.x - xs) <= m && std::abs(s.y - ys) <= m);
                       }});
      table.push_back({"IV.c", Nullcline::K, +1, [=](const State& s, double m) {
                         return s.x > m && s.x <= xs && s.y > k(s.x) + m;
                       }});
      table.push_back({"IV.d", Nullcline::K, -1, [=](const State& s, double m) {
                         return s.x >= xs && s.x < 1.0 / p.beta - m && s.y > m &&
                                s.y < k(s.x) - m;
                       }});
      break;
    }
    case Regime::DegenerateLine: {
      table.push_back({"D.above", Nullcline::H, +1, [=](const State& s, double m) {
                         return s.x > m && s.y > std::max(0.0, h(s.x)) + m;
                       }});
      table.push_back({"D.below", Nullcline::H, -1, [=](const State& s, double m) {
                         return s.x > m && s.y > m && s.y < h(s.x) - m;
                       }});
      break;
    }
    case Regime::MixedBoundary:
      break;
  }
  return table;
}

const char* invariant_region_name(InvariantRegion r) {
  switch (r) {
    case InvariantRegion::Omega2: return "Omega2";
    case InvariantRegion::R2T: return "R2T";
    case InvariantRegion::R5T: return "R5T";
    case InvariantRegion::S2T: return "S2T";
    case InvariantRegion::S5T: return "S5T";
  }
  return "?";
}

double invariant_region_depth(const ModelParams& p, InvariantRegion region,
                              const State& s) {
  const Regime g = classify_regime(p);
  const double h = nullcline_h(p, s.x);
  const double k = nullcline_k(p, s.x);

  auto need = [&](bool ok) {
    if (!ok) {
      throw RegimeMismatch(std::string("invariant region ") +
                           invariant_region_name(region) +
                           " is not defined in regime " + regime_name(g));
    }
  };

  switch (region) {
    case InvariantRegion::Omega2: {
      need(g == Regime::ExclusionYWins || g == Regime::ExclusionXWins);
      double lower, upper;
      exclusion_curves(p, g, s.x, &lower, &upper);
      const double up = std::max(0.0, upper);
      const double lo = std::max(0.0, lower);
      return std::min({s.x, up - s.y, s.y - lo});
    }
    case InvariantRegion::R2T: {
      need(g == Regime::Bistable);
      const EquilibriumSet eq = equilibria(p);
      return std::min({s.x, eq.Estar->x - s.x, s.y - h, k - s.y});
    }
    case InvariantRegion::R5T: {
      need(g == Regime::Bistable);
      const EquilibriumSet eq = equilibria(p);
      return std::min({s.x - eq.Estar->x, p.K - s.x, h - s.y,
                       s.y - std::max(0.0, k)});
    }
    case InvariantRegion::S2T: {
      need(g == Regime::Coexistence);
      const EquilibriumSet eq = equilibria(p);
      return std::min({s.x, eq.Estar->x - s.x, s.y - k, h - s.y});
    }
    case InvariantRegion::S5T: {
      need(g == Regime::Coexistence);
      const EquilibriumSet eq = equilibria(p);
      return std::min({s.x - eq.Estar->x, 1.0 / p.beta - s.x, k - s.y,
                       s.y - std::max(0.0, h)});
    }
  }
  return -kInf;
}

bool in_invariant_region(const ModelParams& p, InvariantRegion region,
                         const State& s, double tol) {
  return invariant_region_depth(p, region, s) >= -tol;
}

std::vector<InvariantRegion> invariant_regions_for(const ModelParams& p) {
  switch (classify_regime(p)) {
    case Regime::ExclusionYWins:
    case Regime::ExclusionXWins:
      return {InvariantRegion::Omega2};
    case Regime::Bistable:
      return {InvariantRegion::R2T, InvariantRegion::R5T};
    case Regime::Coexistence:
      return {InvariantRegion::S2T, InvariantRegion::S5T};
    default:
      return {};
  }
}

}  // namespace tslv
