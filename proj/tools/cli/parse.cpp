#include "cli/parse.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

namespace ccc::cli {
namespace {

using nlohmann::json;

NodeValue split_node_value(const std::string& text, const char* flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
    throw std::invalid_argument(std::string(flag) +
                                ": expected NODE=VALUE, got " + text);
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

ClassifySpec split_classify(const std::string& text) {
  // X:Y:COLLIDER=VALUE
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("--classify: expected X:Y:COLLIDER=VALUE");
  }
  const NodeValue cv = split_node_value(text.substr(c2 + 1), "--classify");
  return ClassifySpec{text.substr(0, c1), text.substr(c1 + 1, c2 - c1 - 1),
                      cv.first, cv.second};
}

FlipSpec split_flip(const std::string& text) {
  // VAR:FROM:TO, radians
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("--flip-rate: expected VAR:FROM:TO");
  }
  FlipSpec flip;
  flip.var = text.substr(0, c1);
  try {
    flip.from = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    flip.to = std::stod(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("--flip-rate: FROM and TO must be radians");
  }
  return flip;
}

void resolve_settings(const std::string& text, RunSpec& spec) {
  if (text == "canonical") {
    const double pi = std::numbers::pi;
    spec.s_a = 0.0;
    spec.s_a_prime = pi / 4.0;
    spec.s_b = pi / 8.0;
    spec.s_b_prime = 3.0 * pi / 8.0;
    return;
  }
  std::istringstream in(text);
  std::string part;
  std::vector<double> values;
  while (std::getline(in, part, ',')) {
    try {
      values.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw std::invalid_argument("--settings: expected canonical or "
                                  "a,a',b,b' in radians");
    }
  }
  if (values.size() != 4) {
    throw std::invalid_argument("--settings: expected four radians a,a',b,b'");
  }
  spec.s_a = values[0];
  spec.s_a_prime = values[1];
  spec.s_b = values[2];
  spec.s_b_prime = values[3];
}

}  // namespace

RunSpec parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Bell experiments, postselection, and constrained colliders"};
  app.name("ccc");
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "Run from a RunSpec JSON file (a report's spec block works)");

  RunSpec spec;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::string postselect_raw, constrain_raw, clamp_raw, classify_raw, flip_raw;
  std::string settings_raw = "canonical";
  std::vector<std::string> do_raw, condition_raw;

  const auto add_run_mode = [&](CLI::App* sub) {
    sub->add_flag("--exact", "Evaluate the exact joint (default)");
    sub->add_option("--trials", trials, "Number of sampled trials");
    sub->add_option("--seed", seed, "64-bit seed; required with --trials");
    sub->add_option("--format", spec.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", spec.out, "Write the report to a file");
  };

  CLI::App* v = app.add_subcommand("v", "Two-particle Bell experiment");
  v->add_option("--prep", spec.prep, "Prepared Bell state 0..3");
  v->add_option("--a", spec.a, "Wing-A angle, radians");
  v->add_option("--b", spec.b, "Wing-B angle, radians");
  add_run_mode(v);

  CLI::App* w = app.add_subcommand(
      "w", "Four-particle experiment with a Bell measurement at M");
  w->add_option("--postselect", postselect_raw,
                "Keep runs with this M outcome (0..3)");
  w->add_option("--constrain", constrain_raw,
                "Force this M outcome by a boundary constraint (0..3)");
  w->add_option("--a", spec.a, "Wing-A angle, radians");
  w->add_option("--b", spec.b, "Wing-B angle, radians");
  w->add_option("--source1", spec.source1, "Bell state of source 1 (0..3)");
  w->add_option("--source2", spec.source2, "Bell state of source 2 (0..3)");
  add_run_mode(w);

  CLI::App* vd = app.add_subcommand(
      "v-delayed", "V experiment with a uniformly mixed, delayed-readout "
                   "preparation");
  vd->add_option("--a", spec.a, "Wing-A angle, radians");
  vd->add_option("--b", spec.b, "Wing-B angle, radians");
  add_run_mode(vd);

  CLI::App* chsh = app.add_subcommand("chsh", "CHSH value of a family");
  chsh->add_option("family", spec.family, "v | w | v-delayed | toy")
      ->required();
  chsh->add_option("--prep", spec.prep, "Bell preparation for family v");
  chsh->add_option("--postselect", postselect_raw,
                   "Postselected M outcome for family w");
  chsh->add_option("--constrain", constrain_raw,
                   "Constrained M outcome for family w");
  chsh->add_option("--settings", settings_raw,
                   "canonical or a,a',b,b' in radians");
  add_run_mode(chsh);

  CLI::App* causal = app.add_subcommand("causal", "Query a discrete SCM");
  causal->add_option("model", spec.model, "ivy or a path to an SCM JSON file")
      ->required();
  causal->add_option("--clamp", clamp_raw,
                     "Boundary-constrain NODE=VALUE before querying");
  causal->add_option("--do", do_raw, "Intervene NODE=VALUE (repeatable)");
  causal->add_option("--condition", condition_raw,
                     "Condition on NODE=VALUE (repeatable)");
  causal->add_option("--classify", classify_raw,
                     "Classify X:Y:COLLIDER=VALUE");
  add_run_mode(causal);

  CLI::App* toy = app.add_subcommand(
      "toy", "Classical toy models of the postselected experiments");
  toy->add_option("variant", spec.family, "dces")
      ->required()
      ->check(CLI::IsMember({"dces"}));
  toy->add_option("--a", spec.a, "Wing-A angle, radians");
  toy->add_option("--b", spec.b, "Wing-B angle, radians");
  toy->add_flag("--constrained", spec.constrained,
                "Draw the pair straight from the quantum joint");
  toy->add_flag("--postselect", spec.postselect_accept,
                "Condition the reported joint on acceptance");
  toy->add_option("--flip-rate", flip_raw,
                  "Counterfactual flip rate for VAR:FROM:TO");
  toy->add_option("--flip-target", spec.flip_target,
                  "Node whose flips are counted (default B)");
  toy->add_flag("--classify", spec.toy_classify,
                "Classify the toy's collider correlation");
  add_run_mode(toy);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ccc");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream help;
    help << app.help();
    throw HelpRequested{help.str()};
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }

  if (!config_path.empty()) {
    if (app.get_subcommands().size() > 0) {
      throw std::invalid_argument(
          "--config cannot be combined with a subcommand");
    }
    std::ifstream in(config_path);
    if (!in) {
      throw std::invalid_argument("--config: cannot open " + config_path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
  }

  const auto fired = app.get_subcommands();
  if (fired.empty()) {
    throw std::invalid_argument(
        "missing command: expected v, w, v-delayed, chsh, causal, or toy "
        "(or --config)");
  }
  CLI::App* sub = fired.front();
  spec.command = sub->get_name();
  if (spec.command == "toy") spec.family.clear();

  const auto parse_bell = [](const std::string& raw, const char* flag) {
    try {
      const int value = std::stoi(raw);
      if (value < 0 || value > 3) {
        throw std::invalid_argument("");
      }
      return value;
    } catch (const std::exception&) {
      throw std::invalid_argument(
          std::string(flag) + ": BellIndex out of range (expected 0..3, got " +
          raw + ")");
    }
  };

  if (spec.command == "w" || (spec.command == "chsh" && spec.family == "w")) {
    if (!postselect_raw.empty() && !constrain_raw.empty()) {
      throw std::invalid_argument(
          "--postselect and --constrain are mutually exclusive");
    }
    if (!postselect_raw.empty()) {
      spec.w_mode = "postselect";
      spec.m = parse_bell(postselect_raw, "--postselect");
    } else if (!constrain_raw.empty()) {
      spec.w_mode = "constrain";
      spec.m = parse_bell(constrain_raw, "--constrain");
    }
  }
  if (spec.command == "chsh") {
    resolve_settings(settings_raw, spec);
  }
  if (spec.command == "causal") {
    if (!clamp_raw.empty()) spec.clamp = split_node_value(clamp_raw, "--clamp");
    for (const auto& d : do_raw) {
      spec.do_list.push_back(split_node_value(d, "--do"));
    }
    for (const auto& c : condition_raw) {
      spec.condition_list.push_back(split_node_value(c, "--condition"));
    }
    if (!classify_raw.empty()) spec.classify = split_classify(classify_raw);
  }
  if (spec.command == "toy" && !flip_raw.empty()) {
    spec.flip = split_flip(flip_raw);
  }

  if (sub->count("--seed") > 0) spec.seed = seed;
  if (sub->count("--trials") > 0) {
    spec.trials = trials;
    spec.exact = sub->count("--exact") > 0;
  } else {
    spec.exact = true;
  }

  validate(spec);
  return spec;
}

RunSpec parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  if (doc.is_object() && doc.contains("spec")) doc = doc["spec"];
  if (!doc.is_object() || !doc.contains("command")) {
    throw std::invalid_argument("config: expected an object with a command");
  }

  RunSpec spec;
  spec.command = doc["command"].get<std::string>();

  const auto number = [&](const char* key, double fallback) {
    return doc.contains(key) && !doc[key].is_null() ? doc[key].get<double>()
                                                    : fallback;
  };
  const auto integer = [&](const char* key, int fallback) {
    return doc.contains(key) && !doc[key].is_null() ? doc[key].get<int>()
                                                    : fallback;
  };

  spec.a = number("a", 0.0);
  spec.b = number("b", 0.0);
  spec.prep = integer("prep", 0);
  spec.source1 = integer("source1", 0);
  spec.source2 = integer("source2", 0);
  if (doc.contains("mode") && !doc["mode"].is_null()) {
    spec.w_mode = doc["mode"].get<std::string>();
  }
  spec.m = integer("m", 0);
  if (doc.contains("family") && !doc["family"].is_null()) {
    spec.family = doc["family"].get<std::string>();
  }
  if (doc.contains("settings") && doc["settings"].is_array()) {
    const auto& s = doc["settings"];
    if (s.size() != 4) {
      throw std::invalid_argument("config: settings must hold four radians");
    }
    spec.s_a = s[0].get<double>();
    spec.s_a_prime = s[1].get<double>();
    spec.s_b = s[2].get<double>();
    spec.s_b_prime = s[3].get<double>();
  } else if (spec.command == "chsh") {
    resolve_settings("canonical", spec);
  }
  if (doc.contains("model") && !doc["model"].is_null()) {
    spec.model = doc["model"].get<std::string>();
  }
  if (doc.contains("clamp") && !doc["clamp"].is_null()) {
    spec.clamp = split_node_value(doc["clamp"].get<std::string>(), "clamp");
  }
  if (doc.contains("do")) {
    for (const auto& d : doc["do"]) {
      spec.do_list.push_back(split_node_value(d.get<std::string>(), "do"));
    }
  }
  if (doc.contains("condition")) {
    for (const auto& c : doc["condition"]) {
      spec.condition_list.push_back(
          split_node_value(c.get<std::string>(), "condition"));
    }
  }
  if (spec.command == "causal" && doc.contains("classify") &&
      !doc["classify"].is_null()) {
    spec.classify = split_classify(doc["classify"].get<std::string>());
  }
  if (spec.command == "toy") {
    spec.constrained = doc.value("constrained", false);
    spec.postselect_accept = doc.value("postselect", false);
    if (doc.contains("flip_rate") && !doc["flip_rate"].is_null()) {
      spec.flip = split_flip(doc["flip_rate"].get<std::string>());
    }
    if (doc.contains("flip_target") && !doc["flip_target"].is_null()) {
      spec.flip_target = doc["flip_target"].get<std::string>();
    }
    spec.toy_classify = doc.value("classify", false);
  }

  if (doc.contains("trials") && !doc["trials"].is_null()) {
    spec.trials = doc["trials"].get<std::int64_t>();
  }
  if (doc.contains("seed") && !doc["seed"].is_null()) {
    spec.seed = doc["seed"].get<std::uint64_t>();
  }
  spec.exact = doc.value("exact", !spec.trials.has_value());
  if (doc.contains("format") && !doc["format"].is_null()) {
    spec.format = doc["format"].get<std::string>();
  }

  validate(spec);
  return spec;
}

}  // namespace ccc::cli
