// Exact finite joint distributions over named variables with finite
// domains; the common currency between the quantum evaluators and the
// causal-model engine.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ccc/common.hpp"

namespace ccc {

struct Variable {
  std::string name;
  std::vector<std::string> domain;  // value labels; order is part of the contract
};

// Dense joint distribution. Cells are stored in mixed-radix order with the
// first variable most significant, so every outcome tuple is present
// (possibly with probability zero). Probabilities are nonnegative and sum
// to 1 within 1e-9.
class JointDistribution {
 public:
  JointDistribution(std::vector<Variable> variables,
                    std::vector<double> probabilities);

  const std::vector<Variable>& variables() const { return variables_; }
  std::size_t n_cells() const { return probs_.size(); }
  const std::vector<double>& cells() const { return probs_; }

  double prob(std::size_t cell) const { return probs_.at(cell); }
  double prob(const std::vector<int>& assignment) const;

  std::vector<int> decode(std::size_t cell) const;
  std::size_t encode(const std::vector<int>& assignment) const;

  // Index of a variable by name; throws std::invalid_argument if unknown.
  int index_of(std::string_view variable) const;
  // Index of a value within a variable's domain; throws if unknown.
  int value_index(std::string_view variable, std::string_view value) const;

  JointDistribution marginal(const std::vector<std::string>& keep) const;
  double marginal_prob(std::string_view variable, std::string_view value) const;

  // Condition on variable = value: drop the variable, renormalize the rest.
  // Throws ZeroProbabilityError when the event has probability <= kZeroWeight.
  JointDistribution condition(std::string_view variable,
                              std::string_view value) const;

  // Append a deterministic variable pinned to domain[value_idx].
  JointDistribution with_constant_variable(const std::string& name,
                                           std::vector<std::string> domain,
                                           int value_idx) const;

  // Largest absolute cell difference; requires identical variable structure.
  double sup_distance(const JointDistribution& other) const;

  // Human-readable "name=value,..." string for one cell.
  std::string outcome_label(std::size_t cell) const;

 private:
  std::vector<Variable> variables_;
  std::vector<double> probs_;
  std::vector<std::size_t> strides_;
};

}  // namespace ccc
