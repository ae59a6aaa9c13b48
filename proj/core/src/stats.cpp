#include "ccc/stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ccc {
namespace {

void require_two_binary(const JointDistribution& joint, const char* who) {
  if (joint.variables().size() != 2 ||
      joint.variables()[0].domain.size() != 2 ||
      joint.variables()[1].domain.size() != 2) {
    throw std::invalid_argument(std::string(who) +
                                " expects a joint over two binary variables");
  }
}

}  // namespace

JointDistribution condition(const JointDistribution& joint,
                            std::string_view variable, std::string_view value) {
  return joint.condition(variable, value);
}

double correlator(const JointDistribution& joint) {
  require_two_binary(joint, "correlator");
  return joint.prob({0, 0}) + joint.prob({1, 1}) - joint.prob({0, 1}) -
         joint.prob({1, 0});
}

double pearson_correlation(const JointDistribution& joint, std::string_view x,
                           std::string_view y) {
  const JointDistribution pair = joint.marginal({std::string(x), std::string(y)});

  double ex = 0.0, ey = 0.0, exx = 0.0, eyy = 0.0, exy = 0.0;
  for (std::size_t cell = 0; cell < pair.n_cells(); ++cell) {
    const auto assignment = pair.decode(cell);
    const double vx = assignment[0];
    const double vy = assignment[1];
    const double p = pair.prob(cell);
    ex += p * vx;
    ey += p * vy;
    exx += p * vx * vx;
    eyy += p * vy * vy;
    exy += p * vx * vy;
  }
  const double var_x = exx - ex * ex;
  const double var_y = eyy - ey * ey;
  if (var_x <= kZeroWeight || var_y <= kZeroWeight) {
    throw std::invalid_argument("pearson_correlation: degenerate variable");
  }
  return (exy - ex * ey) / std::sqrt(var_x * var_y);
}

double chsh(const JointFamily& family, const ChshSettings& s) {
  const auto e = [&](double a, double b) {
    return correlator(family(BasisAngle(a), BasisAngle(b)));
  };
  return e(s.a, s.b) - e(s.a, s.b_prime) + e(s.a_prime, s.b) +
         e(s.a_prime, s.b_prime);
}

double no_signaling_gap(const JointFamily& family,
                        std::span<const double> grid_a,
                        std::span<const double> grid_b) {
  if (grid_a.empty() || grid_b.empty()) {
    throw std::invalid_argument("no_signaling_gap: empty settings grid");
  }
  double gap = 0.0;
  // A's marginal may not move with b ...
  for (const double a : grid_a) {
    for (std::size_t i = 0; i < grid_b.size(); ++i) {
      const JointDistribution ji = family(BasisAngle(a), BasisAngle(grid_b[i]));
      const double pi0 = ji.marginal_prob("A", "0");
      for (std::size_t j = i + 1; j < grid_b.size(); ++j) {
        const JointDistribution jj =
            family(BasisAngle(a), BasisAngle(grid_b[j]));
        gap = std::max(gap, std::abs(pi0 - jj.marginal_prob("A", "0")));
      }
    }
  }
  // ... and B's may not move with a.
  for (const double b : grid_b) {
    for (std::size_t i = 0; i < grid_a.size(); ++i) {
      const JointDistribution ji = family(BasisAngle(grid_a[i]), BasisAngle(b));
      const double pi0 = ji.marginal_prob("B", "0");
      for (std::size_t j = i + 1; j < grid_a.size(); ++j) {
        const JointDistribution jj =
            family(BasisAngle(grid_a[j]), BasisAngle(b));
        gap = std::max(gap, std::abs(pi0 - jj.marginal_prob("B", "0")));
      }
    }
  }
  return gap;
}

double selection_sensitivity(const JointFamily& family, BellIndex m,
                             std::span<const SettingsPair> comparisons) {
  const std::string m_label = std::to_string(m.value());
  double sensitivity = 0.0;
  for (const SettingsPair& pair : comparisons) {
    const JointDistribution j0 = family(BasisAngle(pair.a0), BasisAngle(pair.b0))
                                     .marginal({"A", "B", "M"});
    const JointDistribution j1 = family(BasisAngle(pair.a1), BasisAngle(pair.b1))
                                     .marginal({"A", "B", "M"});
    const int m0 = j0.value_index("M", m_label);
    const int m1 = j1.value_index("M", m_label);
    const int arity = static_cast<int>(j0.variables()[2].domain.size());
    for (int alpha = 0; alpha < 2; ++alpha) {
      for (int beta = 0; beta < 2; ++beta) {
        double cell0 = 0.0, cell1 = 0.0;
        for (int i = 0; i < arity; ++i) {
          cell0 += j0.prob({alpha, beta, i});
          cell1 += j1.prob({alpha, beta, i});
        }
        if (cell0 <= kZeroWeight || cell1 <= kZeroWeight) continue;
        const double hit0 = j0.prob({alpha, beta, m0});
        const double hit1 = j1.prob({alpha, beta, m1});
        sensitivity =
            std::max(sensitivity, std::abs(hit0 / cell0 - hit1 / cell1));
      }
    }
  }
  return sensitivity;
}

std::vector<double> default_settings_grid() {
  const double pi = std::numbers::pi;
  return {0.0, pi / 8.0, pi / 4.0, 3.0 * pi / 8.0, pi / 2.0};
}

std::vector<SettingsPair> axis_pairs(std::span<const double> grid) {
  std::vector<SettingsPair> pairs;
  for (const double fixed : grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        pairs.push_back(SettingsPair{grid[i], fixed, grid[j], fixed});
        pairs.push_back(SettingsPair{fixed, grid[i], fixed, grid[j]});
      }
    }
  }
  return pairs;
}

ChshSettings canonical_chsh_settings() {
  const double pi = std::numbers::pi;
  return ChshSettings{0.0, pi / 4.0, pi / 8.0, 3.0 * pi / 8.0};
}

ChshSettings canonical_chsh_settings_for(BellIndex m) {
  ChshSettings s = canonical_chsh_settings();
  if (m.value() == 1 || m.value() == 2) {
    s.b = -s.b;
    s.b_prime = -s.b_prime;
  }
  return s;
}

}  // namespace ccc
