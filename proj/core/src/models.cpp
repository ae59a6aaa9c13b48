#include "ccc/models.hpp"

#include <algorithm>
#include <vector>

#include "ccc/experiments.hpp"

namespace ccc {

DiscreteScm ivy_scm() {
  ScmNode academic{"academic", {"0", "1"}, {}, {{0.5, 0.5}}};
  ScmNode athletic{"athletic", {"0", "1"}, {}, {{0.5, 0.5}}};
  // admitted = academic OR athletic; rows ordered (academic, athletic) =
  // 00, 01, 10, 11.
  ScmNode admitted{"admitted",
                   {"0", "1"},
                   {"academic", "athletic"},
                   {{1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
  return DiscreteScm({academic, athletic, admitted});
}

DiscreteScm toy_dces(BasisAngle a, BasisAngle b, bool constrained) {
  const JointDistribution q = run_v_exact(VConfig{BellIndex(0), a, b});
  // Cells in the pinned coupling order 00, 01, 10, 11.
  const std::vector<double> q_cells = {q.prob({0, 0}), q.prob({0, 1}),
                                       q.prob({1, 0}), q.prob({1, 1})};
  const double q_max = *std::max_element(q_cells.begin(), q_cells.end());

  if (!constrained) {
    ScmNode node_a{"A", {"0", "1"}, {}, {{0.5, 0.5}}};
    ScmNode node_b{"B", {"0", "1"}, {}, {{0.5, 0.5}}};
    std::vector<std::vector<double>> accept_rows;
    for (const double cell : q_cells) {
      const double accept = std::min(1.0, cell / q_max);
      accept_rows.push_back({accept, 1.0 - accept});
    }
    ScmNode accept_node{kToyAcceptNode,
                        {"accept", "reject"},
                        {"A", "B"},
                        std::move(accept_rows)};
    return DiscreteScm({node_a, node_b, accept_node});
  }

  // Boundary-constrained form: the pair is drawn straight from Q on a single
  // exogenous U, and the collider node always accepts.
  ScmNode pair{"AB", {"00", "01", "10", "11"}, {}, {q_cells}};
  ScmNode node_a{"A",
                 {"0", "1"},
                 {"AB"},
                 {{1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}}};
  ScmNode node_b{"B",
                 {"0", "1"},
                 {"AB"},
                 {{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}}};
  ScmNode accept_node{kToyAcceptNode,
                      {"accept", "reject"},
                      {"A", "B"},
                      {{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}};
  return DiscreteScm({pair, node_a, node_b, accept_node});
}

}  // namespace ccc
