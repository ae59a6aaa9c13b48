// Deterministic report emission. All numbers are printed with nine fixed
// decimals, keys in a pinned order, so byte-identical specs yield
// byte-identical reports.

#pragma once

#include <optional>
#include <string>

#include "ccc/experiments.hpp"
#include "ccc/joint.hpp"
#include "cli/run_spec.hpp"

namespace ccc::cli {

struct StatsBlock {
  std::optional<double> e;
  std::optional<double> s;
  std::optional<double> no_signaling_gap;
  std::optional<double> selection_sensitivity;
  std::optional<double> accept_rate;
  std::optional<double> flip_rate;
  std::optional<double> dependence;
  std::optional<std::string> verdict;
};

struct Report {
  RunSpec spec;
  std::optional<JointDistribution> joint;
  std::vector<RunRecord> records;
  StatsBlock stats;

  std::string to_json() const;
  std::string to_csv() const;
  // Renders as JSON or CSV per the request's format field.
  std::string render() const;
};

// "%.9f" with negative zero normalized away.
std::string fixed9(double value);

// The "spec" echo block; parse_config() accepts this object back.
std::string spec_echo_json(const RunSpec& spec);

}  // namespace ccc::cli
