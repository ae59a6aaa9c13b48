#include "cli/run_spec.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ccc::cli {
namespace {

void require(bool ok, const std::string& diagnostic) {
  if (!ok) throw std::invalid_argument(diagnostic);
}

void check_bell_index(int value, const char* flag) {
  require(value >= 0 && value <= 3,
          std::string(flag) + ": BellIndex out of range (expected 0..3, got " +
              std::to_string(value) + ")");
}

}  // namespace

void validate(const RunSpec& spec) {
  static const std::set<std::string> kCommands = {"v",    "w",      "v-delayed",
                                                  "chsh", "causal", "toy"};
  require(kCommands.contains(spec.command),
          "unknown command: " + spec.command);

  require(std::isfinite(spec.a), "--a: must be a finite angle in radians");
  require(std::isfinite(spec.b), "--b: must be a finite angle in radians");

  if (spec.command == "v" || (spec.command == "chsh" && spec.family == "v")) {
    check_bell_index(spec.prep, "--prep");
  }
  if (spec.command == "w" || (spec.command == "chsh" && spec.family == "w")) {
    require(spec.w_mode == "unconstrained" || spec.w_mode == "postselect" ||
                spec.w_mode == "constrain",
            "w mode must be unconstrained, postselect, or constrain");
    if (spec.w_mode == "postselect") check_bell_index(spec.m, "--postselect");
    if (spec.w_mode == "constrain") check_bell_index(spec.m, "--constrain");
    check_bell_index(spec.source1, "--source1");
    check_bell_index(spec.source2, "--source2");
  }
  if (spec.command == "chsh") {
    static const std::set<std::string> kFamilies = {"v", "w", "v-delayed",
                                                    "toy"};
    require(kFamilies.contains(spec.family),
            "chsh family must be one of v, w, v-delayed, toy");
    require(std::isfinite(spec.s_a) && std::isfinite(spec.s_a_prime) &&
                std::isfinite(spec.s_b) && std::isfinite(spec.s_b_prime),
            "--settings: angles must be finite radians");
    require(!spec.trials, "chsh is exact-only; drop --trials");
  }
  if (spec.command == "causal") {
    require(!spec.model.empty(), "causal requires a model (ivy or a path)");
    require(!spec.trials, "causal is exact-only; drop --trials");
    if (spec.classify) {
      require(!spec.classify->x.empty() && !spec.classify->y.empty() &&
                  !spec.classify->collider.empty() &&
                  !spec.classify->value.empty(),
              "--classify: expected X:Y:COLLIDER=VALUE");
    }
  }
  if (spec.command == "toy") {
    if (spec.flip) {
      require(spec.flip->var == "a" || spec.flip->var == "b",
              "--flip-rate: the varied setting must be a or b");
      require(std::isfinite(spec.flip->from) && std::isfinite(spec.flip->to),
              "--flip-rate: angles must be finite radians");
    }
    require(!spec.flip_target.empty(), "--flip-target: node name required");
  }

  if (spec.trials) {
    require(*spec.trials >= 1, "--trials: must be >= 1");
    require(spec.seed.has_value(), "--seed is required when --trials is set");
    require(!spec.exact, "--exact and --trials are mutually exclusive");
  } else {
    require(spec.exact, "internal: exact must hold when trials is unset");
  }

  require(spec.format == "json" || spec.format == "csv",
          "--format: must be json or csv");
  if (spec.format == "csv") {
    require(spec.trials.has_value(), "--format csv requires --trials");
    require(spec.command == "v" || spec.command == "w" ||
                spec.command == "v-delayed" || spec.command == "toy",
            "--format csv applies to sampled v, w, v-delayed, toy runs");
  }
}

}  // namespace ccc::cli
