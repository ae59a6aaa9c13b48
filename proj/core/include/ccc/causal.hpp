// Discrete structural-causal-model engine: DAGs and colliders, exact joint
// enumeration, interventions, boundary-constraint clamping, counterfactuals
// under fixed exogenous noise, and the fragile/robust classifier for
// correlations induced at a collider.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccc/joint.hpp"

namespace ccc {

class Dag {
 public:
  Dag(std::vector<std::string> nodes,
      std::map<std::string, std::vector<std::string>> parents);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<std::string>& parents(std::string_view node) const;

  // Throws std::invalid_argument when the graph has a cycle.
  std::vector<std::string> topological_order() const;

  // Nodes with two or more parents, in declaration order.
  std::vector<std::string> colliders() const;

  bool is_ancestor(std::string_view ancestor, std::string_view node) const;

 private:
  std::vector<std::string> nodes_;
  std::map<std::string, std::vector<std::string>> parents_;
};

// One endogenous variable: a finite domain, ordered parents, and a
// conditional probability table. Rows are indexed by the parent assignment
// (first parent most significant); each row is a distribution over the
// domain. The equivalent exogenous-noise mechanism is
//   value = inverse-CDF of the row at U_node,  U_node ~ Uniform[0,1),
// with the CDF accumulated in domain order. That coupling convention is
// what run-level counterfactuals (flip rates) are defined against.
struct ScmNode {
  std::string name;
  std::vector<std::string> domain;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> cpt;
};

class DiscreteScm {
 public:
  DiscreteScm() = default;
  explicit DiscreteScm(std::vector<ScmNode> nodes);

  const std::vector<ScmNode>& nodes() const { return nodes_; }
  const ScmNode& node(std::string_view name) const;
  int node_index(std::string_view name) const;
  int value_index(std::string_view node, std::string_view value) const;
  Dag dag() const;

  // Exact joint by CPT product, variables in declaration order.
  // Throws std::length_error when the joint exceeds 1e6 cells.
  JointDistribution joint() const;

  // Surgery: replace the node's mechanism by a point mass and cut its parents.
  DiscreteScm intervene(std::string_view node, std::string_view value) const;

  // Evaluate mechanisms in topological order from one exogenous-noise vector
  // (indexed by declaration order); returns one value index per node.
  std::vector<int> evaluate(std::span<const double> noise) const;

  // Sample assignments via the noise form; trial t, node i uses
  // CounterRng(seed).uniform(t, i). Deterministic in (trials, seed).
  std::vector<std::vector<int>> sample(std::int64_t trials,
                                       std::uint64_t seed) const;

 private:
  std::size_t node_ref_domain_size(std::string_view name) const;

  std::vector<ScmNode> nodes_;
};

struct Constraint {
  std::string node;
  std::string value;
};

struct Intervention {
  std::string node;
  std::string value;
};

// A model whose collider (or any node) is pinned by a boundary constraint.
// Query semantics: apply interventions first, then condition the resulting
// joint on the constraint and renormalize; the constraint therefore holds
// with probability 1 under every query.
class ConstrainedModel {
 public:
  ConstrainedModel(DiscreteScm base, Constraint constraint);

  const DiscreteScm& base() const { return base_; }
  const Constraint& constraint() const { return constraint_; }

  // Observational joint over the remaining nodes.
  JointDistribution joint() const;

  // Interventional joint; throws ImpossibleConstraintError when the
  // interventions leave the constraint event with zero probability.
  JointDistribution joint_under(std::span<const Intervention> interventions) const;

 private:
  DiscreteScm base_;
  Constraint constraint_;
};

// Requires the constraint event to have positive probability unclamped.
ConstrainedModel clamp(const DiscreteScm& scm, const Constraint& constraint);

// Max over x, x' and y of |P(Y=y | X=x) - P(Y=y | X=x')|; zero exactly when
// Y is conditionally independent of X on the support.
double dependence(const JointDistribution& joint, std::string_view x,
                  std::string_view y);

enum class CccClass { kNoDependence, kFragileArtifact, kRobustConnection };

std::string_view to_string(CccClass verdict);

// Diagnostics behind a verdict:
//   dependence            conditional X-Y dependence given collider = value
//   interventional        max TV shift of Y under do(X) in the queried model
//                         (unconditioned when unclamped, clamped otherwise)
//   selection_sensitivity max shift of P(collider = value) under do(X) in the
//                         unclamped model - the membership mechanism; zero by
//                         construction once the collider is clamped
struct CccVerdict {
  CccClass verdict;
  double dependence = 0.0;
  double interventional = 0.0;
  double selection_sensitivity = 0.0;
};

// Classifier rule, with d_cond the conditional dependence and d_int the
// interventional shift in the queried model:
//   d_cond <= eps                          -> NoDependence
//   d_cond  > eps, model clamped, d_int>eps -> RobustConnection
//   otherwise                               -> FragileArtifact
// Preconditions: collider has >= 2 parents, x is an ancestor of the
// collider, and y is not a descendant of x in the unclamped DAG (so an
// unclamped intervention on x cannot move y).
CccVerdict classify_ccc(const DiscreteScm& scm, std::string_view x,
                        std::string_view y, std::string_view collider,
                        std::string_view value, double eps = 1e-9);
CccVerdict classify_ccc(const ConstrainedModel& model, std::string_view x,
                        std::string_view y, double eps = 1e-9);

// Probability, over the shared exogenous noise, that y's value differs
// between the two models when every U_node is held fixed. Exact: integrates
// the overlap of the inverse-CDF partitions node by node. The models must
// agree on node names, order, and domains, and the declaration order must be
// topological for both.
double counterfactual_flip_rate(const DiscreteScm& left,
                                const DiscreteScm& right, std::string_view y);

// Flip rate between do(x = from) and do(x = to) on one model.
double counterfactual_flip_rate(const DiscreteScm& scm, std::string_view x,
                                std::string_view from, std::string_view to,
                                std::string_view y);

}  // namespace ccc
