#include "ccc/causal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "ccc/rng.hpp"

namespace ccc {
namespace {

constexpr std::size_t kMaxJointCells = 1'000'000;

double total_variation(const std::vector<double>& p,
                       const std::vector<double>& q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

std::vector<double> marginal_row(const JointDistribution& joint,
                                 std::string_view y) {
  const JointDistribution m = joint.marginal({std::string(y)});
  return m.cells();
}

int inv_cdf(const std::vector<double>& row, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    cum += row[i];
    if (u < cum) return static_cast<int>(i);
  }
  for (std::size_t i = row.size(); i-- > 0;) {
    if (row[i] > 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(row.size()) - 1;
}

}  // namespace

Dag::Dag(std::vector<std::string> nodes,
         std::map<std::string, std::vector<std::string>> parents)
    : nodes_(std::move(nodes)), parents_(std::move(parents)) {
  std::set<std::string> known(nodes_.begin(), nodes_.end());
  if (known.size() != nodes_.size()) {
    throw std::invalid_argument("Dag: duplicate node names");
  }
  for (const auto& node : nodes_) {
    for (const auto& parent : parents_[node]) {
      if (!known.contains(parent)) {
        throw std::invalid_argument("Dag: unknown parent " + parent + " of " +
                                    node);
      }
    }
  }
  topological_order();  // rejects cycles
}

const std::vector<std::string>& Dag::parents(std::string_view node) const {
  const auto it = parents_.find(std::string(node));
  if (it == parents_.end()) {
    throw std::invalid_argument("Dag: unknown node " + std::string(node));
  }
  return it->second;
}

std::vector<std::string> Dag::topological_order() const {
  std::vector<std::string> order;
  std::set<std::string> placed;
  while (order.size() < nodes_.size()) {
    bool progressed = false;
    for (const auto& node : nodes_) {
      if (placed.contains(node)) continue;
      const auto& ps = parents_.at(node);
      const bool ready = std::all_of(
          ps.begin(), ps.end(),
          [&](const std::string& p) { return placed.contains(p); });
      if (ready) {
        order.push_back(node);
        placed.insert(node);
        progressed = true;
      }
    }
    if (!progressed) {
      throw std::invalid_argument("Dag: the graph has a cycle");
    }
  }
  return order;
}

std::vector<std::string> Dag::colliders() const {
  std::vector<std::string> result;
  for (const auto& node : nodes_) {
    if (parents_.at(node).size() >= 2) result.push_back(node);
  }
  return result;
}

bool Dag::is_ancestor(std::string_view ancestor, std::string_view node) const {
  if (ancestor == node) return false;
  std::vector<std::string> frontier = {std::string(node)};
  std::set<std::string> seen;
  while (!frontier.empty()) {
    const std::string current = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& parent : parents_.at(current)) {
      if (parent == ancestor) return true;
      if (seen.insert(parent).second) frontier.push_back(parent);
    }
  }
  return false;
}

DiscreteScm::DiscreteScm(std::vector<ScmNode> nodes) : nodes_(std::move(nodes)) {
  dag();  // validates names, edges, acyclicity
  for (const auto& node : nodes_) {
    if (node.domain.empty()) {
      throw std::invalid_argument("ScmNode " + node.name + ": empty domain");
    }
    std::size_t rows = 1;
    for (const auto& parent_name : node.parents) {
      rows *= node_ref_domain_size(parent_name);
    }
    if (node.cpt.size() != rows) {
      throw std::invalid_argument("ScmNode " + node.name +
                                  ": CPT must have one row per parent "
                                  "assignment");
    }
    for (const auto& row : node.cpt) {
      if (row.size() != node.domain.size()) {
        throw std::invalid_argument("ScmNode " + node.name +
                                    ": CPT row arity mismatch");
      }
      double total = 0.0;
      for (const double p : row) {
        if (!std::isfinite(p) || p < -kNormTol) {
          throw std::invalid_argument("ScmNode " + node.name +
                                      ": invalid CPT entry");
        }
        total += p;
      }
      if (std::abs(total - 1.0) > kNormTol) {
        throw std::invalid_argument("ScmNode " + node.name +
                                    ": CPT row does not sum to 1");
      }
    }
  }
}

std::size_t DiscreteScm::node_ref_domain_size(std::string_view name) const {
  return node(name).domain.size();
}

const ScmNode& DiscreteScm::node(std::string_view name) const {
  return nodes_[static_cast<std::size_t>(node_index(name))];
}

int DiscreteScm::node_index(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown SCM node: " + std::string(name));
}

int DiscreteScm::value_index(std::string_view node_name,
                             std::string_view value) const {
  const auto& domain = node(node_name).domain;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == value) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown value " + std::string(value) +
                              " for node " + std::string(node_name));
}

Dag DiscreteScm::dag() const {
  std::vector<std::string> names;
  std::map<std::string, std::vector<std::string>> parents;
  names.reserve(nodes_.size());
  for (const auto& node : nodes_) {
    names.push_back(node.name);
    parents[node.name] = node.parents;
  }
  return Dag(std::move(names), std::move(parents));
}

JointDistribution DiscreteScm::joint() const {
  std::size_t cells = 1;
  for (const auto& node : nodes_) {
    if (node.domain.size() > kMaxJointCells / cells) {
      throw std::length_error("DiscreteScm::joint: joint exceeds 1e6 cells");
    }
    cells *= node.domain.size();
  }

  // Parent positions and CPT row strides, resolved once.
  std::vector<std::vector<int>> parent_idx(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (const auto& p : nodes_[i].parents) {
      parent_idx[i].push_back(node_index(p));
    }
  }

  std::vector<Variable> vars;
  vars.reserve(nodes_.size());
  for (const auto& node : nodes_) {
    vars.push_back(Variable{node.name, node.domain});
  }

  std::vector<double> probs(cells, 0.0);
  std::vector<int> assignment(nodes_.size(), 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::size_t rest = cell;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      assignment[i] = static_cast<int>(rest % nodes_[i].domain.size());
      rest /= nodes_[i].domain.size();
    }
    double p = 1.0;
    for (std::size_t i = 0; i < nodes_.size() && p > 0.0; ++i) {
      std::size_t row = 0;
      for (const int pi : parent_idx[i]) {
        row = row * nodes_[static_cast<std::size_t>(pi)].domain.size() +
              static_cast<std::size_t>(assignment[static_cast<std::size_t>(pi)]);
      }
      p *= nodes_[i].cpt[row][static_cast<std::size_t>(assignment[i])];
    }
    probs[cell] = p;
  }
  return JointDistribution(std::move(vars), std::move(probs));
}

DiscreteScm DiscreteScm::intervene(std::string_view node_name,
                                   std::string_view value) const {
  const int target = node_index(node_name);
  const int val = value_index(node_name, value);
  std::vector<ScmNode> nodes = nodes_;
  ScmNode& n = nodes[static_cast<std::size_t>(target)];
  n.parents.clear();
  std::vector<double> row(n.domain.size(), 0.0);
  row[static_cast<std::size_t>(val)] = 1.0;
  n.cpt = {std::move(row)};
  return DiscreteScm(std::move(nodes));
}

std::vector<int> DiscreteScm::evaluate(std::span<const double> noise) const {
  if (noise.size() != nodes_.size()) {
    throw std::invalid_argument("evaluate: one noise term per node required");
  }
  const auto order = dag().topological_order();
  std::vector<int> values(nodes_.size(), -1);
  for (const auto& name : order) {
    const auto i = static_cast<std::size_t>(node_index(name));
    const ScmNode& n = nodes_[i];
    std::size_t row = 0;
    for (const auto& parent : n.parents) {
      const auto pi = static_cast<std::size_t>(node_index(parent));
      row = row * nodes_[pi].domain.size() +
            static_cast<std::size_t>(values[pi]);
    }
    values[i] = inv_cdf(n.cpt[row], noise[i]);
  }
  return values;
}

std::vector<std::vector<int>> DiscreteScm::sample(std::int64_t trials,
                                                  std::uint64_t seed) const {
  if (trials < 1) throw std::invalid_argument("sample: trials must be >= 1");
  const CounterRng rng(seed);
  std::vector<std::vector<int>> result;
  result.reserve(static_cast<std::size_t>(trials));
  std::vector<double> noise(nodes_.size(), 0.0);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      noise[i] = rng.uniform(static_cast<std::uint64_t>(trial), i);
    }
    result.push_back(evaluate(noise));
  }
  return result;
}

ConstrainedModel::ConstrainedModel(DiscreteScm base, Constraint constraint)
    : base_(std::move(base)), constraint_(std::move(constraint)) {
  base_.value_index(constraint_.node, constraint_.value);
  if (base_.joint().marginal_prob(constraint_.node, constraint_.value) <=
      kZeroWeight) {
    throw ImpossibleConstraintError(
        "clamp: constraint " + constraint_.node + "=" + constraint_.value +
        " has zero probability in the unclamped model");
  }
}

JointDistribution ConstrainedModel::joint() const {
  return base_.joint().condition(constraint_.node, constraint_.value);
}

JointDistribution ConstrainedModel::joint_under(
    std::span<const Intervention> interventions) const {
  DiscreteScm surgered = base_;
  for (const auto& d : interventions) {
    surgered = surgered.intervene(d.node, d.value);
  }
  const JointDistribution joint = surgered.joint();
  if (joint.marginal_prob(constraint_.node, constraint_.value) <=
      kZeroWeight) {
    throw ImpossibleConstraintError(
        "constrained query: the interventions make " + constraint_.node + "=" +
        constraint_.value + " impossible");
  }
  return joint.condition(constraint_.node, constraint_.value);
}

ConstrainedModel clamp(const DiscreteScm& scm, const Constraint& constraint) {
  return ConstrainedModel(scm, constraint);
}

double dependence(const JointDistribution& joint, std::string_view x,
                  std::string_view y) {
  const JointDistribution pair = joint.marginal({std::string(x), std::string(y)});
  const std::size_t nx = pair.variables()[0].domain.size();
  const std::size_t ny = pair.variables()[1].domain.size();

  // P(Y=y | X=x) rows where P(X=x) > 0.
  std::vector<std::vector<double>> rows;
  for (std::size_t xi = 0; xi < nx; ++xi) {
    double px = 0.0;
    std::vector<double> row(ny, 0.0);
    for (std::size_t yi = 0; yi < ny; ++yi) {
      const double p =
          pair.prob({static_cast<int>(xi), static_cast<int>(yi)});
      px += p;
      row[yi] = p;
    }
    if (px <= kZeroWeight) continue;
    for (auto& v : row) v /= px;
    rows.push_back(std::move(row));
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      for (std::size_t yi = 0; yi < ny; ++yi) {
        worst = std::max(worst, std::abs(rows[i][yi] - rows[j][yi]));
      }
    }
  }
  return worst;
}

std::string_view to_string(CccClass verdict) {
  switch (verdict) {
    case CccClass::kNoDependence:
      return "NoDependence";
    case CccClass::kFragileArtifact:
      return "FragileArtifact";
    case CccClass::kRobustConnection:
      return "RobustConnection";
  }
  return "?";
}

namespace {

void check_ccc_preconditions(const DiscreteScm& scm, std::string_view x,
                             std::string_view y, std::string_view collider) {
  const Dag dag = scm.dag();
  if (dag.parents(collider).size() < 2) {
    throw std::invalid_argument("classify_ccc: " + std::string(collider) +
                                " is not a collider");
  }
  if (!dag.is_ancestor(x, collider)) {
    throw std::invalid_argument("classify_ccc: " + std::string(x) +
                                " is not an ancestor of the collider");
  }
  if (dag.is_ancestor(x, y)) {
    throw std::invalid_argument("classify_ccc: " + std::string(y) +
                                " must not be a descendant of " +
                                std::string(x));
  }
}

// Max shift of P(collider = value) across interventions on x, in the
// unclamped model: how much x can move ensemble membership.
double membership_sensitivity(const DiscreteScm& scm, std::string_view x,
                              std::string_view collider,
                              std::string_view value) {
  const auto& domain = scm.node(x).domain;
  double lo = 1.0, hi = 0.0;
  for (const auto& xv : domain) {
    const double p = scm.intervene(x, xv).joint().marginal_prob(collider, value);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return hi - lo;
}

double max_tv_over_do(const std::vector<std::vector<double>>& y_rows) {
  double worst = 0.0;
  for (std::size_t i = 0; i < y_rows.size(); ++i) {
    for (std::size_t j = i + 1; j < y_rows.size(); ++j) {
      worst = std::max(worst, total_variation(y_rows[i], y_rows[j]));
    }
  }
  return worst;
}

}  // namespace

CccVerdict classify_ccc(const DiscreteScm& scm, std::string_view x,
                        std::string_view y, std::string_view collider,
                        std::string_view value, double eps) {
  check_ccc_preconditions(scm, x, y, collider);

  CccVerdict result{CccClass::kNoDependence};
  result.dependence =
      dependence(scm.joint().condition(collider, value), x, y);
  result.selection_sensitivity =
      membership_sensitivity(scm, x, collider, value);

  // Unclamped query: intervene without re-conditioning.
  std::vector<std::vector<double>> y_rows;
  for (const auto& xv : scm.node(x).domain) {
    y_rows.push_back(marginal_row(scm.intervene(x, xv).joint(), y));
  }
  result.interventional = max_tv_over_do(y_rows);

  if (result.dependence <= eps) {
    result.verdict = CccClass::kNoDependence;
  } else if (result.interventional > eps) {
    result.verdict = CccClass::kRobustConnection;
  } else {
    result.verdict = CccClass::kFragileArtifact;
  }
  return result;
}

CccVerdict classify_ccc(const ConstrainedModel& model, std::string_view x,
                        std::string_view y, double eps) {
  const Constraint& c = model.constraint();
  check_ccc_preconditions(model.base(), x, y, c.node);

  CccVerdict result{CccClass::kNoDependence};
  result.dependence = dependence(model.joint(), x, y);
  // The constraint holds with probability 1 under every query, so no
  // intervention can move ensemble membership.
  result.selection_sensitivity = 0.0;

  // Clamped query: intervene, then recondition on the boundary constraint.
  std::vector<std::vector<double>> y_rows;
  for (const auto& xv : model.base().node(x).domain) {
    const Intervention do_x{std::string(x), xv};
    y_rows.push_back(
        marginal_row(model.joint_under(std::span(&do_x, 1)), y));
  }
  result.interventional = max_tv_over_do(y_rows);

  if (result.dependence <= eps) {
    result.verdict = CccClass::kNoDependence;
  } else if (result.interventional > eps) {
    result.verdict = CccClass::kRobustConnection;
  } else {
    result.verdict = CccClass::kFragileArtifact;
  }
  return result;
}

double counterfactual_flip_rate(const DiscreteScm& left,
                                const DiscreteScm& right, std::string_view y) {
  const auto& ln = left.nodes();
  const auto& rn = right.nodes();
  if (ln.size() != rn.size()) {
    throw std::invalid_argument("flip rate: twin models differ in node count");
  }
  std::size_t paired_cells = 1;
  for (std::size_t i = 0; i < ln.size(); ++i) {
    if (ln[i].name != rn[i].name || ln[i].domain != rn[i].domain) {
      throw std::invalid_argument(
          "flip rate: twin models must share node names and domains");
    }
    const std::size_t d = ln[i].domain.size();
    if (d * d > kMaxJointCells / paired_cells) {
      throw std::length_error("flip rate: paired enumeration exceeds 1e6 cells");
    }
    paired_cells *= d * d;
  }

  // Declaration order must respect the edges of both twins.
  const auto is_topological = [](const DiscreteScm& scm) {
    std::set<std::string> seen;
    for (const auto& node : scm.nodes()) {
      for (const auto& parent : node.parents) {
        if (!seen.contains(parent)) return false;
      }
      seen.insert(node.name);
    }
    return true;
  };
  if (!is_topological(left) || !is_topological(right)) {
    throw std::invalid_argument(
        "flip rate: declaration order must be topological for both twins");
  }

  const int y_idx = left.node_index(y);

  // Parent positions per twin.
  const auto parent_positions = [](const DiscreteScm& scm) {
    std::vector<std::vector<int>> out(scm.nodes().size());
    for (std::size_t i = 0; i < scm.nodes().size(); ++i) {
      for (const auto& p : scm.nodes()[i].parents) {
        out[i].push_back(scm.node_index(p));
      }
    }
    return out;
  };
  const auto lp = parent_positions(left);
  const auto rp = parent_positions(right);

  const auto cpt_row = [](const DiscreteScm& scm,
                          const std::vector<std::vector<int>>& positions,
                          std::size_t i, const std::vector<int>& values) {
    std::size_t row = 0;
    for (const int pi : positions[i]) {
      row = row * scm.nodes()[static_cast<std::size_t>(pi)].domain.size() +
            static_cast<std::size_t>(values[static_cast<std::size_t>(pi)]);
    }
    return row;
  };

  // Shared noise couples the twins: when node i has rows (p, q) in the two
  // worlds, the joint law of its twin values is the overlap of the two
  // inverse-CDF partitions of [0,1). Overlap slivers below kZeroWeight are
  // boundary round-off, not probability mass, and are dropped so that
  // distributions equal up to rounding yield a rate of exactly zero.
  double flipped = 0.0;
  std::vector<int> lv(ln.size(), 0);
  std::vector<int> rv(ln.size(), 0);

  const std::function<void(std::size_t, double)> recurse =
      [&](std::size_t i, double mass) {
        if (i == ln.size()) {
          if (lv[static_cast<std::size_t>(y_idx)] !=
              rv[static_cast<std::size_t>(y_idx)]) {
            flipped += mass;
          }
          return;
        }
        const auto& lrow = ln[i].cpt[cpt_row(left, lp, i, lv)];
        const auto& rrow = rn[i].cpt[cpt_row(right, rp, i, rv)];
        const std::size_t d = ln[i].domain.size();
        double lc_lo = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
          const double lc_hi = lc_lo + lrow[a];
          double rc_lo = 0.0;
          for (std::size_t b = 0; b < d; ++b) {
            const double rc_hi = rc_lo + rrow[b];
            const double overlap =
                std::min(lc_hi, rc_hi) - std::max(lc_lo, rc_lo);
            if (overlap > kZeroWeight) {
              lv[i] = static_cast<int>(a);
              rv[i] = static_cast<int>(b);
              recurse(i + 1, mass * overlap);
            }
            rc_lo = rc_hi;
          }
          lc_lo = lc_hi;
        }
      };
  recurse(0, 1.0);
  return flipped;
}

double counterfactual_flip_rate(const DiscreteScm& scm, std::string_view x,
                                std::string_view from, std::string_view to,
                                std::string_view y) {
  return counterfactual_flip_rate(scm.intervene(x, from), scm.intervene(x, to),
                                  y);
}

}  // namespace ccc
