// JSON model files for user-supplied SCMs:
// {
//   "nodes": [{"name": "...", "domain": ["..."], "parents": ["..."],
//              "cpt": [[row probabilities], ...]}, ...],
//   "clamp": {"node": "...", "value": "..."}          (optional)
// }
// CPT rows are listed with the first parent most significant; each row is a
// distribution over the node's domain in domain order.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ccc/causal.hpp"

namespace ccc {

struct ScmFile {
  DiscreteScm scm;
  std::optional<Constraint> clamp;
};

ScmFile load_scm_json(const std::string& json_text);
ScmFile load_scm_file(const std::filesystem::path& path);

}  // namespace ccc
