#include "ccc/scm_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ccc {
namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& array, const char* what) {
  if (!array.is_array()) {
    throw std::invalid_argument(std::string("SCM file: ") + what +
                                " must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& item : array) {
    if (!item.is_string()) {
      throw std::invalid_argument(std::string("SCM file: ") + what +
                                  " entries must be strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

ScmFile load_scm_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("SCM file: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw std::invalid_argument("SCM file: expected an object with a "
                                "\"nodes\" array");
  }

  std::vector<ScmNode> nodes;
  for (const auto& entry : doc["nodes"]) {
    if (!entry.is_object() || !entry.contains("name")) {
      throw std::invalid_argument("SCM file: every node needs a \"name\"");
    }
    ScmNode node;
    node.name = entry["name"].get<std::string>();
    node.domain = string_list(entry.value("domain", json::array()), "domain");
    node.parents =
        string_list(entry.value("parents", json::array()), "parents");
    const json cpt = entry.value("cpt", json::array());
    if (!cpt.is_array()) {
      throw std::invalid_argument("SCM file: node " + node.name +
                                  ": cpt must be an array of rows");
    }
    for (const auto& row : cpt) {
      if (!row.is_array()) {
        throw std::invalid_argument("SCM file: node " + node.name +
                                    ": cpt rows must be arrays");
      }
      std::vector<double> values;
      for (const auto& v : row) {
        if (!v.is_number()) {
          throw std::invalid_argument("SCM file: node " + node.name +
                                      ": cpt entries must be numbers");
        }
        values.push_back(v.get<double>());
      }
      node.cpt.push_back(std::move(values));
    }
    nodes.push_back(std::move(node));
  }

  ScmFile file{DiscreteScm(std::move(nodes)), std::nullopt};
  if (doc.contains("clamp")) {
    const json& c = doc["clamp"];
    if (!c.is_object() || !c.contains("node") || !c.contains("value")) {
      throw std::invalid_argument(
          "SCM file: clamp needs \"node\" and \"value\"");
    }
    file.clamp = Constraint{c["node"].get<std::string>(),
                            c["value"].get<std::string>()};
    file.scm.value_index(file.clamp->node, file.clamp->value);
  }
  return file;
}

ScmFile load_scm_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("SCM file: cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scm_json(buffer.str());
}

}  // namespace ccc
