#include "cli/report.hpp"

#include <cstdio>
#include <stdexcept>

#include "ccc/version.hpp"

namespace ccc::cli {
namespace {

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string opt_number(const std::optional<double>& v) {
  return v ? fixed9(*v) : "null";
}

std::string opt_string(const std::optional<std::string>& v) {
  return v ? json_string(*v) : "null";
}

std::string node_value(const NodeValue& nv) {
  return nv.first + "=" + nv.second;
}

std::string node_value_list(const std::vector<NodeValue>& list) {
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += ',';
    out += json_string(node_value(list[i]));
  }
  out += ']';
  return out;
}

std::string run_mode_tail(const RunSpec& spec) {
  std::string out;
  out += "\"exact\":" + std::string(spec.exact ? "true" : "false");
  out += ",\"trials\":" +
         (spec.trials ? std::to_string(*spec.trials) : std::string("null"));
  out += ",\"seed\":" +
         (spec.seed ? std::to_string(*spec.seed) : std::string("null"));
  out += ",\"format\":" + json_string(spec.format);
  return out;
}

}  // namespace

std::string fixed9(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", value);
  std::string out = buf;
  if (out == "-0.000000000") out = "0.000000000";
  return out;
}

std::string spec_echo_json(const RunSpec& spec) {
  std::string out = "{";
  out += "\"command\":" + json_string(spec.command);

  if (spec.command == "v") {
    out += ",\"prep\":" + std::to_string(spec.prep);
    out += ",\"a\":" + fixed9(spec.a);
    out += ",\"b\":" + fixed9(spec.b);
  } else if (spec.command == "w") {
    out += ",\"mode\":" + json_string(spec.w_mode);
    out += ",\"m\":" + (spec.w_mode == "unconstrained"
                            ? std::string("null")
                            : std::to_string(spec.m));
    out += ",\"a\":" + fixed9(spec.a);
    out += ",\"b\":" + fixed9(spec.b);
    out += ",\"source1\":" + std::to_string(spec.source1);
    out += ",\"source2\":" + std::to_string(spec.source2);
  } else if (spec.command == "v-delayed") {
    out += ",\"a\":" + fixed9(spec.a);
    out += ",\"b\":" + fixed9(spec.b);
  } else if (spec.command == "chsh") {
    out += ",\"family\":" + json_string(spec.family);
    if (spec.family == "v") {
      out += ",\"prep\":" + std::to_string(spec.prep);
    } else if (spec.family == "w") {
      out += ",\"mode\":" + json_string(spec.w_mode);
      out += ",\"m\":" + (spec.w_mode == "unconstrained"
                              ? std::string("null")
                              : std::to_string(spec.m));
    }
    out += ",\"settings\":[" + fixed9(spec.s_a) + "," + fixed9(spec.s_a_prime) +
           "," + fixed9(spec.s_b) + "," + fixed9(spec.s_b_prime) + "]";
  } else if (spec.command == "causal") {
    out += ",\"model\":" + json_string(spec.model);
    out += ",\"clamp\":" +
           (spec.clamp ? json_string(node_value(*spec.clamp))
                       : std::string("null"));
    out += ",\"do\":" + node_value_list(spec.do_list);
    out += ",\"condition\":" + node_value_list(spec.condition_list);
    out += ",\"classify\":" +
           (spec.classify
                ? json_string(spec.classify->x + ":" + spec.classify->y + ":" +
                              spec.classify->collider + "=" +
                              spec.classify->value)
                : std::string("null"));
  } else if (spec.command == "toy") {
    out += ",\"a\":" + fixed9(spec.a);
    out += ",\"b\":" + fixed9(spec.b);
    out += ",\"constrained\":" + std::string(spec.constrained ? "true" : "false");
    out += ",\"postselect\":" +
           std::string(spec.postselect_accept ? "true" : "false");
    out += ",\"flip_rate\":" +
           (spec.flip ? json_string(spec.flip->var + ":" + fixed9(spec.flip->from) +
                                    ":" + fixed9(spec.flip->to))
                      : std::string("null"));
    out += ",\"flip_target\":" + json_string(spec.flip_target);
    out += ",\"classify\":" + std::string(spec.toy_classify ? "true" : "false");
  }

  out += ",";
  out += run_mode_tail(spec);
  out += "}";
  return out;
}

std::string Report::to_json() const {
  std::string out = "{\n";
  out += "  \"spec\": " + spec_echo_json(spec) + ",\n";

  out += "  \"joint\": [";
  if (joint) {
    for (std::size_t cell = 0; cell < joint->n_cells(); ++cell) {
      if (cell > 0) out += ',';
      out += "\n    {\"outcome\": " + json_string(joint->outcome_label(cell)) +
             ", \"p\": " + fixed9(joint->prob(cell)) + "}";
    }
    out += "\n  ";
  }
  out += "],\n";

  out += "  \"stats\": {";
  out += "\"E\": " + opt_number(stats.e);
  out += ", \"S\": " + opt_number(stats.s);
  out += ", \"no_signaling_gap\": " + opt_number(stats.no_signaling_gap);
  out += ", \"selection_sensitivity\": " +
         opt_number(stats.selection_sensitivity);
  out += ", \"accept_rate\": " + opt_number(stats.accept_rate);
  out += ", \"flip_rate\": " + opt_number(stats.flip_rate);
  out += ", \"dependence\": " + opt_number(stats.dependence);
  out += ", \"verdict\": " + opt_string(stats.verdict);
  out += "},\n";

  out += "  \"provenance\": {\"version\": " +
         json_string(std::string(kVersion)) + ", \"seed\": " +
         (spec.seed ? std::to_string(*spec.seed) : std::string("null")) + "}\n";
  out += "}\n";
  return out;
}

std::string Report::to_csv() const {
  std::string out = "trial,a,b,A,B,M,D,accepted,weight\n";
  for (const RunRecord& r : records) {
    out += std::to_string(r.trial);
    out += ',' + fixed9(r.a);
    out += ',' + fixed9(r.b);
    out += ',' + std::to_string(r.A);
    out += ',' + std::to_string(r.B);
    out += ',';
    if (r.M) out += std::to_string(*r.M);
    out += ',';
    if (r.D) out += std::to_string(*r.D);
    out += ',';
    out += r.accepted ? '1' : '0';
    out += ',' + fixed9(r.weight);
    out += '\n';
  }
  return out;
}

std::string Report::render() const {
  if (spec.format == "csv") return to_csv();
  return to_json();
}

}  // namespace ccc::cli
