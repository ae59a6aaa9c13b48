#include "cli/execute.hpp"

#include <string>
#include <vector>

#include "ccc/causal.hpp"
#include "ccc/models.hpp"
#include "ccc/scm_json.hpp"
#include "ccc/stats.hpp"

namespace ccc::cli {
namespace {

Variable bit_var(const char* name) { return Variable{name, {"0", "1"}}; }
Variable bell_var(const char* name) {
  return Variable{name, {"0", "1", "2", "3"}};
}

JointDistribution normalized_counts(std::vector<Variable> vars,
                                    std::vector<double> counts, double total) {
  if (total <= 0.0) {
    throw ZeroProbabilityError("empirical joint: no accepted trials");
  }
  for (auto& c : counts) c /= total;
  return JointDistribution(std::move(vars), std::move(counts));
}

JointDistribution empirical_v(const std::vector<RunRecord>& records) {
  std::vector<double> counts(4, 0.0);
  for (const auto& r : records) {
    counts[static_cast<std::size_t>(r.A * 2 + r.B)] += r.weight;
  }
  return normalized_counts({bit_var("A"), bit_var("B")}, std::move(counts),
                           static_cast<double>(records.size()));
}

JointDistribution empirical_w(const std::vector<RunRecord>& records) {
  std::vector<double> counts(16, 0.0);
  for (const auto& r : records) {
    counts[static_cast<std::size_t>(r.A * 8 + r.B * 4 + r.M.value())] +=
        r.weight;
  }
  return normalized_counts({bit_var("A"), bit_var("B"), bell_var("M")},
                           std::move(counts),
                           static_cast<double>(records.size()));
}

JointDistribution empirical_accepted_ab(const std::vector<RunRecord>& records) {
  std::vector<double> counts(4, 0.0);
  double total = 0.0;
  for (const auto& r : records) {
    if (!r.accepted) continue;
    counts[static_cast<std::size_t>(r.A * 2 + r.B)] += r.weight;
    total += r.weight;
  }
  return normalized_counts({bit_var("A"), bit_var("B")}, std::move(counts),
                           total);
}

JointDistribution empirical_delayed(const std::vector<RunRecord>& records) {
  std::vector<double> counts(16, 0.0);
  for (const auto& r : records) {
    counts[static_cast<std::size_t>(r.A * 8 + r.B * 4 + r.D.value())] +=
        r.weight;
  }
  return normalized_counts({bit_var("A"), bit_var("B"), bell_var("D")},
                           std::move(counts),
                           static_cast<double>(records.size()));
}

double grid_gap(const JointFamily& family) {
  const std::vector<double> grid = default_settings_grid();
  return no_signaling_gap(family, grid, grid);
}

Report execute_v(const RunSpec& spec) {
  Report report{spec, std::nullopt, {}, {}};
  const VConfig cfg{BellIndex(spec.prep), BasisAngle(spec.a),
                    BasisAngle(spec.b)};
  if (spec.exact) {
    report.joint = run_v_exact(cfg);
    report.stats.e = correlator(*report.joint);
    report.stats.no_signaling_gap = grid_gap(v_family(cfg.prep));
  } else {
    report.records = sample(cfg, *spec.trials, *spec.seed);
    report.joint = empirical_v(report.records);
    report.stats.e = correlator(*report.joint);
  }
  return report;
}

Report execute_w(const RunSpec& spec) {
  Report report{spec, std::nullopt, {}, {}};
  const BasisAngle a(spec.a);
  const BasisAngle b(spec.b);
  const BellIndex s1(spec.source1);
  const BellIndex s2(spec.source2);
  const std::vector<double> grid = default_settings_grid();
  const std::vector<SettingsPair> pairs = axis_pairs(grid);

  WConfig cfg = WConfig::unconstrained(a, b, s1, s2);
  if (spec.w_mode == "postselect") {
    cfg = WConfig::postselect_on(BellIndex(spec.m), a, b, s1, s2);
  } else if (spec.w_mode == "constrain") {
    cfg = WConfig::constrain_to(BellIndex(spec.m), a, b, s1, s2);
  }

  if (!spec.exact) {
    report.records = sample(cfg, *spec.trials, *spec.seed);
    if (cfg.mode == WMode::kPostselect) {
      report.joint = empirical_accepted_ab(report.records);
      double accepted = 0.0;
      for (const auto& r : report.records) accepted += r.accepted ? 1.0 : 0.0;
      report.stats.accept_rate =
          accepted / static_cast<double>(report.records.size());
      report.stats.e = correlator(*report.joint);
    } else if (cfg.mode == WMode::kConstrain) {
      report.joint = empirical_accepted_ab(report.records);
      report.stats.e = correlator(*report.joint);
    } else {
      report.joint = empirical_w(report.records);
      report.stats.e = correlator(report.joint->marginal({"A", "B"}));
    }
    return report;
  }

  if (cfg.mode == WMode::kUnconstrained) {
    report.joint = run_w_exact(cfg);
    report.stats.e = correlator(report.joint->marginal({"A", "B"}));
    report.stats.no_signaling_gap = grid_gap(w_marginal_family(s1, s2));
    // No postselection target was named; report the worst case over the
    // four M outcomes.
    double worst = 0.0;
    for (int m = 0; m < 4; ++m) {
      worst = std::max(worst, selection_sensitivity(w_full_family(s1, s2),
                                                    BellIndex(m), pairs));
    }
    report.stats.selection_sensitivity = worst;
  } else if (cfg.mode == WMode::kPostselect) {
    const JointDistribution full = run_w_exact(
        WConfig::unconstrained(a, b, s1, s2));
    report.stats.accept_rate =
        full.marginal_prob("M", std::to_string(spec.m));
    report.joint = full.condition("M", std::to_string(spec.m));
    report.stats.e = correlator(*report.joint);
    report.stats.no_signaling_gap =
        grid_gap(w_postselected_family(cfg.target, s1, s2));
    report.stats.selection_sensitivity =
        selection_sensitivity(w_full_family(s1, s2), cfg.target, pairs);
  } else {
    report.joint = run_w_constrained_exact(cfg);
    report.stats.e = correlator(*report.joint);
    report.stats.no_signaling_gap =
        grid_gap(w_constrained_family(cfg.target, s1, s2));
    const BellIndex target = cfg.target;
    const JointFamily forced = [target, s1, s2](BasisAngle fa, BasisAngle fb) {
      return run_w_constrained_exact(
                 WConfig::constrain_to(target, fa, fb, s1, s2))
          .with_constant_variable("M", {"0", "1", "2", "3"}, target.value());
    };
    report.stats.selection_sensitivity =
        selection_sensitivity(forced, target, pairs);
  }
  return report;
}

Report execute_v_delayed(const RunSpec& spec) {
  Report report{spec, std::nullopt, {}, {}};
  const DelayedVConfig cfg{BasisAngle(spec.a), BasisAngle(spec.b)};
  if (spec.exact) {
    report.joint = run_v_delayed_exact(cfg);
    report.stats.e = correlator(report.joint->marginal({"A", "B"}));
    report.stats.no_signaling_gap = grid_gap(delayed_v_family());
  } else {
    report.records = sample(cfg, *spec.trials, *spec.seed);
    report.joint = empirical_delayed(report.records);
    report.stats.e = correlator(report.joint->marginal({"A", "B"}));
  }
  return report;
}

JointFamily toy_postselected_family() {
  return [](BasisAngle a, BasisAngle b) {
    return toy_dces(a, b, false)
        .joint()
        .condition(kToyAcceptNode, kToyAccept)
        .marginal({"A", "B"});
  };
}

Report execute_chsh(const RunSpec& spec) {
  Report report{spec, std::nullopt, {}, {}};
  JointFamily family;
  if (spec.family == "v") {
    family = v_family(BellIndex(spec.prep));
  } else if (spec.family == "w") {
    const BellIndex s1(spec.source1);
    const BellIndex s2(spec.source2);
    if (spec.w_mode == "postselect") {
      family = w_postselected_family(BellIndex(spec.m), s1, s2);
    } else if (spec.w_mode == "constrain") {
      family = w_constrained_family(BellIndex(spec.m), s1, s2);
    } else {
      family = w_marginal_family(s1, s2);
    }
  } else if (spec.family == "v-delayed") {
    family = delayed_v_family();
  } else {
    family = toy_postselected_family();
  }

  const ChshSettings settings{spec.s_a, spec.s_a_prime, spec.s_b,
                              spec.s_b_prime};
  report.stats.s = chsh(family, settings);
  report.joint = family(BasisAngle(spec.s_a), BasisAngle(spec.s_b));
  report.stats.e = correlator(*report.joint);
  report.stats.no_signaling_gap = grid_gap(family);
  return report;
}

Report execute_causal(const RunSpec& spec) {
  Report report{spec, std::nullopt, {}, {}};
  ScmFile file = spec.model == "ivy"
                     ? ScmFile{ivy_scm(), std::nullopt}
                     : load_scm_file(spec.model);

  std::optional<Constraint> constraint;
  if (spec.clamp) {
    constraint = Constraint{spec.clamp->first, spec.clamp->second};
  } else if (file.clamp) {
    constraint = file.clamp;
  }

  if (spec.classify) {
    CccVerdict verdict{CccClass::kNoDependence};
    if (constraint) {
      if (spec.classify->collider != constraint->node ||
          spec.classify->value != constraint->value) {
        throw std::invalid_argument(
            "--classify: the collider constraint must match --clamp");
      }
      verdict = classify_ccc(clamp(file.scm, *constraint), spec.classify->x,
                             spec.classify->y);
    } else {
      verdict = classify_ccc(file.scm, spec.classify->x, spec.classify->y,
                             spec.classify->collider, spec.classify->value);
    }
    report.stats.verdict = std::string(to_string(verdict.verdict));
    report.stats.dependence = verdict.dependence;
    report.stats.selection_sensitivity = verdict.selection_sensitivity;
  }

  std::vector<Intervention> interventions;
  for (const auto& d : spec.do_list) {
    interventions.push_back(Intervention{d.first, d.second});
  }

  JointDistribution joint = [&]() {
    if (constraint) {
      return clamp(file.scm, *constraint).joint_under(interventions);
    }
    DiscreteScm surgered = file.scm;
    for (const auto& d : interventions) {
      surgered = surgered.intervene(d.node, d.value);
    }
    return surgered.joint();
  }();
  for (const auto& c : spec.condition_list) {
    joint = joint.condition(c.first, c.second);
  }
  report.joint = std::move(joint);
  return report;
}

Report execute_toy(const RunSpec& spec) {
  Report report{spec, std::nullopt, {}, {}};
  const BasisAngle a(spec.a);
  const BasisAngle b(spec.b);
  const DiscreteScm scm = toy_dces(a, b, spec.constrained);
  const JointDistribution full = scm.joint();
  report.stats.accept_rate = full.marginal_prob(kToyAcceptNode, kToyAccept);

  if (!spec.exact) {
    const auto assignments = scm.sample(*spec.trials, *spec.seed);
    const auto idx_a = static_cast<std::size_t>(scm.node_index("A"));
    const auto idx_b = static_cast<std::size_t>(scm.node_index("B"));
    const auto idx_m = static_cast<std::size_t>(scm.node_index(kToyAcceptNode));
    report.records.reserve(assignments.size());
    for (std::size_t t = 0; t < assignments.size(); ++t) {
      RunRecord r;
      r.trial = static_cast<std::int64_t>(t);
      r.a = spec.a;
      r.b = spec.b;
      r.A = assignments[t][idx_a];
      r.B = assignments[t][idx_b];
      r.accepted = assignments[t][idx_m] == 0;  // domain order: accept first
      report.records.push_back(r);
    }
    double accepted = 0.0;
    for (const auto& r : report.records) accepted += r.accepted ? 1.0 : 0.0;
    report.stats.accept_rate =
        accepted / static_cast<double>(report.records.size());
    report.joint = spec.postselect_accept
                       ? empirical_accepted_ab(report.records)
                       : empirical_v(report.records);
    report.stats.e = correlator(*report.joint);
  } else {
    const JointDistribution base = full.marginal({"A", "B", kToyAcceptNode});
    if (spec.postselect_accept) {
      report.joint = base.condition(kToyAcceptNode, kToyAccept);
      report.stats.e = correlator(*report.joint);
    } else {
      report.joint = base;
      report.stats.e = correlator(base.marginal({"A", "B"}));
    }
  }

  if (spec.flip) {
    const double a0 = spec.flip->var == "a" ? spec.flip->from : spec.a;
    const double a1 = spec.flip->var == "a" ? spec.flip->to : spec.a;
    const double b0 = spec.flip->var == "b" ? spec.flip->from : spec.b;
    const double b1 = spec.flip->var == "b" ? spec.flip->to : spec.b;
    report.stats.flip_rate = counterfactual_flip_rate(
        toy_dces(BasisAngle(a0), BasisAngle(b0), spec.constrained),
        toy_dces(BasisAngle(a1), BasisAngle(b1), spec.constrained),
        spec.flip_target);
  }

  if (spec.toy_classify) {
    const CccVerdict verdict =
        spec.constrained
            ? classify_ccc(clamp(toy_dces(a, b, false),
                                 Constraint{kToyAcceptNode, kToyAccept}),
                           "A", "B")
            : classify_ccc(scm, "A", "B", kToyAcceptNode, kToyAccept);
    report.stats.verdict = std::string(to_string(verdict.verdict));
    report.stats.dependence = verdict.dependence;
    report.stats.selection_sensitivity = verdict.selection_sensitivity;
  }
  return report;
}

}  // namespace

Report execute(const RunSpec& spec) {
  validate(spec);
  if (spec.command == "v") return execute_v(spec);
  if (spec.command == "w") return execute_w(spec);
  if (spec.command == "v-delayed") return execute_v_delayed(spec);
  if (spec.command == "chsh") return execute_chsh(spec);
  if (spec.command == "causal") return execute_causal(spec);
  return execute_toy(spec);
}

}  // namespace ccc::cli
