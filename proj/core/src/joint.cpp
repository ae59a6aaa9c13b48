#include "ccc/joint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccc {
namespace {

constexpr double kSumTol = 1e-9;

std::vector<std::size_t> compute_strides(const std::vector<Variable>& vars) {
  std::vector<std::size_t> strides(vars.size(), 1);
  for (std::size_t i = vars.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * vars[i].domain.size();
  }
  return strides;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<Variable> variables,
                                     std::vector<double> probabilities)
    : variables_(std::move(variables)),
      probs_(std::move(probabilities)),
      strides_(compute_strides(variables_)) {
  std::size_t cells = 1;
  for (const auto& v : variables_) {
    if (v.domain.empty()) {
      throw std::invalid_argument("JointDistribution: empty domain for " +
                                  v.name);
    }
    cells *= v.domain.size();
  }
  if (probs_.size() != cells) {
    throw std::invalid_argument(
        "JointDistribution: cell count does not match the domain product");
  }
  double total = 0.0;
  for (auto& p : probs_) {
    if (!std::isfinite(p)) {
      throw std::invalid_argument("JointDistribution: non-finite probability");
    }
    if (p < 0.0) {
      if (p < -kNormTol) {
        throw std::invalid_argument("JointDistribution: negative probability");
      }
      p = 0.0;  // absorb projection round-off
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTol) {
    throw std::invalid_argument("JointDistribution: probabilities sum to " +
                                std::to_string(total));
  }
}

double JointDistribution::prob(const std::vector<int>& assignment) const {
  return probs_[encode(assignment)];
}

std::vector<int> JointDistribution::decode(std::size_t cell) const {
  std::vector<int> assignment(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    assignment[i] = static_cast<int>((cell / strides_[i]) %
                                     variables_[i].domain.size());
  }
  return assignment;
}

std::size_t JointDistribution::encode(const std::vector<int>& assignment) const {
  if (assignment.size() != variables_.size()) {
    throw std::invalid_argument("encode: wrong assignment arity");
  }
  std::size_t cell = 0;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto domain_size = static_cast<int>(variables_[i].domain.size());
    if (assignment[i] < 0 || assignment[i] >= domain_size) {
      throw std::out_of_range("encode: value index out of domain");
    }
    cell += strides_[i] * static_cast<std::size_t>(assignment[i]);
  }
  return cell;
}

int JointDistribution::index_of(std::string_view variable) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == variable) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown variable: " + std::string(variable));
}

int JointDistribution::value_index(std::string_view variable,
                                   std::string_view value) const {
  const auto& domain = variables_[index_of(variable)].domain;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == value) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown value " + std::string(value) +
                              " for variable " + std::string(variable));
}

JointDistribution JointDistribution::marginal(
    const std::vector<std::string>& keep) const {
  std::vector<int> keep_idx;
  std::vector<Variable> keep_vars;
  keep_idx.reserve(keep.size());
  for (const auto& name : keep) {
    const int idx = index_of(name);
    keep_idx.push_back(idx);
    keep_vars.push_back(variables_[idx]);
  }

  std::vector<std::size_t> keep_strides(keep.size(), 1);
  for (std::size_t i = keep.size(); i-- > 1;) {
    keep_strides[i - 1] = keep_strides[i] * keep_vars[i].domain.size();
  }
  std::size_t cells = keep_vars.empty() ? 1 : keep_strides[0] * keep_vars[0].domain.size();

  std::vector<double> out(cells, 0.0);
  for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
    const auto assignment = decode(cell);
    std::size_t target = 0;
    for (std::size_t i = 0; i < keep_idx.size(); ++i) {
      target += keep_strides[i] *
                static_cast<std::size_t>(assignment[keep_idx[i]]);
    }
    out[target] += probs_[cell];
  }
  return JointDistribution(std::move(keep_vars), std::move(out));
}

double JointDistribution::marginal_prob(std::string_view variable,
                                        std::string_view value) const {
  const int var = index_of(variable);
  const int val = value_index(variable, value);
  double total = 0.0;
  for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
    if (static_cast<int>((cell / strides_[var]) %
                         variables_[var].domain.size()) == val) {
      total += probs_[cell];
    }
  }
  return total;
}

JointDistribution JointDistribution::condition(std::string_view variable,
                                               std::string_view value) const {
  const int var = index_of(variable);
  const int val = value_index(variable, value);

  const double event = marginal_prob(variable, value);
  if (event <= kZeroWeight) {
    throw ZeroProbabilityError("condition: event " + std::string(variable) +
                               "=" + std::string(value) +
                               " has zero probability");
  }

  std::vector<Variable> rest_vars;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (static_cast<int>(i) != var) rest_vars.push_back(variables_[i]);
  }

  std::vector<double> out;
  out.reserve(probs_.size() / variables_[var].domain.size());
  // Cells with variable == value, in the induced mixed-radix order.
  for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
    if (static_cast<int>((cell / strides_[var]) %
                         variables_[var].domain.size()) == val) {
      out.push_back(probs_[cell] / event);
    }
  }
  return JointDistribution(std::move(rest_vars), std::move(out));
}

JointDistribution JointDistribution::with_constant_variable(
    const std::string& name, std::vector<std::string> domain,
    int value_idx) const {
  if (value_idx < 0 || value_idx >= static_cast<int>(domain.size())) {
    throw std::out_of_range("with_constant_variable: value index out of range");
  }
  std::vector<Variable> vars = variables_;
  vars.push_back(Variable{name, std::move(domain)});
  const std::size_t arity = vars.back().domain.size();
  std::vector<double> out(probs_.size() * arity, 0.0);
  for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
    out[cell * arity + static_cast<std::size_t>(value_idx)] = probs_[cell];
  }
  return JointDistribution(std::move(vars), std::move(out));
}

double JointDistribution::sup_distance(const JointDistribution& other) const {
  if (variables_.size() != other.variables_.size() ||
      probs_.size() != other.probs_.size()) {
    throw std::invalid_argument("sup_distance: shape mismatch");
  }
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].domain.size() != other.variables_[i].domain.size()) {
      throw std::invalid_argument("sup_distance: domain mismatch");
    }
  }
  double worst = 0.0;
  for (std::size_t cell = 0; cell < probs_.size(); ++cell) {
    worst = std::max(worst, std::abs(probs_[cell] - other.probs_[cell]));
  }
  return worst;
}

std::string JointDistribution::outcome_label(std::size_t cell) const {
  const auto assignment = decode(cell);
  std::string label;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i > 0) label += ',';
    label += variables_[i].name;
    label += '=';
    label += variables_[i].domain[static_cast<std::size_t>(assignment[i])];
  }
  return label;
}

}  // namespace ccc
