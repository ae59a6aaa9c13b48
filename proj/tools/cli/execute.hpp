#pragma once

#include "cli/report.hpp"
#include "cli/run_spec.hpp"

namespace ccc::cli {

// Dispatch a validated RunSpec to the experiment / stats / causal engines.
Report execute(const RunSpec& spec);

}  // namespace ccc::cli
