#pragma once

#include <string>
#include <vector>

#include "cli/run_spec.hpp"

namespace ccc::cli {

// Thrown when the user asked for --help; carries the text to print.
struct HelpRequested {
  std::string text;
};

// Parse argv (excluding the program name) into a validated RunSpec.
// Throws std::invalid_argument with a diagnostic naming the offending flag.
RunSpec parse_args(const std::vector<std::string>& args);

// Parse a config/spec-echo JSON object (or a whole report: its "spec" block
// is used) into a validated RunSpec.
RunSpec parse_config(const std::string& json_text);

}  // namespace ccc::cli
