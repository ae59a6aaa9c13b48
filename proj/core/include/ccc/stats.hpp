// Statistical functionals over joint distributions: conditioning,
// two-outcome correlators, CHSH, no-signaling gaps, and the
// selection-sensitivity measure that certifies settings-dependent
// ensemble membership.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ccc/experiments.hpp"
#include "ccc/joint.hpp"
#include "ccc/qcore.hpp"

namespace ccc {

struct ChshSettings {
  double a;
  double a_prime;
  double b;
  double b_prime;
};

struct CorrelationReport {
  double E = 0.0;
  std::optional<double> chsh;
  double no_signaling_gap = 0.0;
  double selection_sensitivity = 0.0;
};

// Postselection: keep variable = value, drop the variable, renormalize.
JointDistribution condition(const JointDistribution& joint,
                            std::string_view variable, std::string_view value);

// E = P(equal) - P(unequal) for a joint over exactly two binary variables.
double correlator(const JointDistribution& joint);

// Pearson correlation treating each variable's domain index as its value.
double pearson_correlation(const JointDistribution& joint, std::string_view x,
                           std::string_view y);

// S = E(a,b) - E(a,b') + E(a',b) + E(a',b'). The family must produce a
// two-variable binary joint.
double chsh(const JointFamily& family, const ChshSettings& s);

// Largest shift of either wing's outcome marginal when only the far
// setting changes, maximized over the settings grid.
double no_signaling_gap(const JointFamily& family,
                        std::span<const double> grid_a,
                        std::span<const double> grid_b);

// One settings comparison: the joint at (a0,b0) versus the joint at (a1,b1).
struct SettingsPair {
  double a0;
  double b0;
  double a1;
  double b1;
};

// Max over binary outcome cells (A,B) and listed comparisons of
// |P(M=m | A,B, settings0) - P(M=m | A,B, settings1)|. Cells with numerically
// zero probability under either settings are skipped. A positive value
// certifies that membership of the M=m ensemble depends on the settings.
// The family must include an "M" variable.
double selection_sensitivity(const JointFamily& family, BellIndex m,
                             std::span<const SettingsPair> comparisons);

// Default 5-point settings grid {0, pi/8, pi/4, 3pi/8, pi/2}.
std::vector<double> default_settings_grid();

// All single-axis comparisons over a grid: (a,b) vs (a',b) and (a,b) vs (a,b').
std::vector<SettingsPair> axis_pairs(std::span<const double> grid);

// The canonical CHSH geometry (0, pi/4, pi/8, 3pi/8) and its reflection
// b -> -b, which restores |S| = 2*sqrt(2) for the a+b-type correlations of
// Bell indices 1 and 2.
ChshSettings canonical_chsh_settings();
ChshSettings canonical_chsh_settings_for(BellIndex m);

}  // namespace ccc
