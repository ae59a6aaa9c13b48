#include "ccc/experiments.hpp"

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "ccc/rng.hpp"

namespace ccc {
namespace {

Variable bit_var(const char* name) { return Variable{name, {"0", "1"}}; }
Variable bell_var(const char* name) {
  return Variable{name, {"0", "1", "2", "3"}};
}

int inv_cdf(std::span<const double> probs, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return static_cast<int>(i);
  }
  // Rounding can leave the final cumulative a hair under 1; land on the
  // last outcome that carries mass.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

// Collapse chain for the V experiment: P(A=alpha) and P(B=beta | A=alpha).
struct VTables {
  double p_a0 = 0.0;
  std::array<double, 2> p_b0_given_a{};  // P(B=0 | A=alpha)
};

VTables v_tables(const VConfig& cfg) {
  const StateVector source(2, bell_state(cfg.prep).amplitudes(),
                           {"A-wing", "B-wing"});
  const MeasurementSplit at_a = measure_distribution(source, 0, cfg.a);

  VTables t;
  t.p_a0 = at_a.p0;
  const std::array<const std::optional<StateVector>*, 2> posts = {
      &at_a.post0, &at_a.post1};
  const std::array<double, 2> p_a = {at_a.p0, at_a.p1};
  for (int alpha = 0; alpha < 2; ++alpha) {
    if (p_a[static_cast<std::size_t>(alpha)] <= kZeroWeight) continue;
    const MeasurementSplit at_b =
        measure_distribution(**posts[static_cast<std::size_t>(alpha)], 1, cfg.b);
    t.p_b0_given_a[static_cast<std::size_t>(alpha)] = at_b.p0;
  }
  return t;
}

// Collapse chain for the W experiment in delayed-choice event order:
// wing A, wing B, then the Bell projection on the inner pair.
struct WTables {
  double p_a0 = 0.0;
  std::array<double, 2> p_b0_given_a{};
  // m_given_ab[alpha][beta][m] = P(M=m | A=alpha, B=beta)
  std::array<std::array<std::array<double, 4>, 2>, 2> m_given_ab{};
};

WTables w_tables(const WConfig& cfg) {
  const StateVector left(2, bell_state(cfg.source1).amplitudes(),
                         {"A-wing", "inner-1"});
  const StateVector right(2, bell_state(cfg.source2).amplitudes(),
                          {"inner-2", "B-wing"});
  const StateVector source = tensor(left, right);

  WTables t;
  const MeasurementSplit at_a = measure_distribution(source, 0, cfg.a);
  t.p_a0 = at_a.p0;
  const std::array<const std::optional<StateVector>*, 2> post_a = {
      &at_a.post0, &at_a.post1};
  const std::array<double, 2> p_a = {at_a.p0, at_a.p1};

  for (int alpha = 0; alpha < 2; ++alpha) {
    if (p_a[static_cast<std::size_t>(alpha)] <= kZeroWeight) continue;
    const MeasurementSplit at_b = measure_distribution(
        **post_a[static_cast<std::size_t>(alpha)], 3, cfg.b);
    t.p_b0_given_a[static_cast<std::size_t>(alpha)] = at_b.p0;
    const std::array<const std::optional<StateVector>*, 2> post_b = {
        &at_b.post0, &at_b.post1};
    const std::array<double, 2> p_b = {at_b.p0, at_b.p1};
    for (int beta = 0; beta < 2; ++beta) {
      if (p_b[static_cast<std::size_t>(beta)] <= kZeroWeight) continue;
      for (int m = 0; m < 4; ++m) {
        t.m_given_ab[static_cast<std::size_t>(alpha)]
                    [static_cast<std::size_t>(beta)][static_cast<std::size_t>(m)] =
            bell_project(**post_b[static_cast<std::size_t>(beta)], 1, 2,
                         BellIndex(m))
                .weight;
      }
    }
  }
  return t;
}

double p_of(double p0, int bit) { return bit == 0 ? p0 : 1.0 - p0; }

// (A,B) joint of the constrained W plus the total constraint weight.
struct ConstrainedCells {
  std::array<double, 4> joint{};  // order 00, 01, 10, 11
  double total = 0.0;
};

ConstrainedCells constrained_cells(const WConfig& cfg) {
  const WTables t = w_tables(cfg);
  ConstrainedCells cells;
  const int m = cfg.target.value();
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      const double branch =
          p_of(t.p_a0, alpha) *
          p_of(t.p_b0_given_a[static_cast<std::size_t>(alpha)], beta) *
          t.m_given_ab[static_cast<std::size_t>(alpha)]
                      [static_cast<std::size_t>(beta)][static_cast<std::size_t>(m)];
      cells.joint[static_cast<std::size_t>(alpha * 2 + beta)] = branch;
      cells.total += branch;
    }
  }
  return cells;
}

}  // namespace

WConfig WConfig::unconstrained(BasisAngle a, BasisAngle b, BellIndex s1,
                               BellIndex s2) {
  return WConfig{a, b, s1, s2, WMode::kUnconstrained, BellIndex(0)};
}

WConfig WConfig::postselect_on(BellIndex m, BasisAngle a, BasisAngle b,
                               BellIndex s1, BellIndex s2) {
  return WConfig{a, b, s1, s2, WMode::kPostselect, m};
}

WConfig WConfig::constrain_to(BellIndex m, BasisAngle a, BasisAngle b,
                              BellIndex s1, BellIndex s2) {
  return WConfig{a, b, s1, s2, WMode::kConstrain, m};
}

JointDistribution run_v_exact(const VConfig& cfg) {
  const VTables t = v_tables(cfg);
  std::vector<double> probs(4, 0.0);
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      probs[static_cast<std::size_t>(alpha * 2 + beta)] =
          p_of(t.p_a0, alpha) *
          p_of(t.p_b0_given_a[static_cast<std::size_t>(alpha)], beta);
    }
  }
  return JointDistribution({bit_var("A"), bit_var("B")}, std::move(probs));
}

JointDistribution run_w_exact(const WConfig& cfg) {
  if (cfg.mode != WMode::kUnconstrained) {
    throw std::invalid_argument("run_w_exact expects the unconstrained mode");
  }
  const WTables t = w_tables(cfg);
  std::vector<double> probs(16, 0.0);
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      const double branch =
          p_of(t.p_a0, alpha) *
          p_of(t.p_b0_given_a[static_cast<std::size_t>(alpha)], beta);
      for (int m = 0; m < 4; ++m) {
        probs[static_cast<std::size_t>(alpha * 8 + beta * 4 + m)] =
            branch * t.m_given_ab[static_cast<std::size_t>(alpha)]
                                 [static_cast<std::size_t>(beta)]
                                 [static_cast<std::size_t>(m)];
      }
    }
  }
  return JointDistribution({bit_var("A"), bit_var("B"), bell_var("M")},
                           std::move(probs));
}

JointDistribution run_w_constrained_exact(const WConfig& cfg) {
  if (cfg.mode != WMode::kConstrain) {
    throw std::invalid_argument(
        "run_w_constrained_exact expects the constrained mode");
  }
  ConstrainedCells cells = constrained_cells(cfg);
  if (cells.total < kZeroWeight) {
    throw ImpossibleConstraintError(
        "run_w_constrained_exact: the boundary constraint M=" +
        std::to_string(cfg.target.value()) + " carries no weight");
  }
  std::vector<double> probs(cells.joint.begin(), cells.joint.end());
  for (auto& p : probs) p /= cells.total;
  return JointDistribution({bit_var("A"), bit_var("B")}, std::move(probs));
}

JointDistribution run_v_delayed_exact(const DelayedVConfig& cfg) {
  std::vector<double> probs(16, 0.0);
  for (int d = 0; d < 4; ++d) {
    const JointDistribution slice =
        run_v_exact(VConfig{BellIndex(d), cfg.a, cfg.b});
    for (int alpha = 0; alpha < 2; ++alpha) {
      for (int beta = 0; beta < 2; ++beta) {
        probs[static_cast<std::size_t>(alpha * 8 + beta * 4 + d)] =
            0.25 * slice.prob({alpha, beta});
      }
    }
  }
  return JointDistribution({bit_var("A"), bit_var("B"), bell_var("D")},
                           std::move(probs));
}

std::vector<RunRecord> sample(const VConfig& cfg, std::int64_t trials,
                              std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sample: trials must be >= 1");
  const VTables t = v_tables(cfg);
  const CounterRng rng(seed);
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const auto n = static_cast<std::uint64_t>(trial);
    RunRecord r;
    r.trial = trial;
    r.a = cfg.a.radians();
    r.b = cfg.b.radians();
    r.A = rng.uniform(n, 0) < t.p_a0 ? 0 : 1;
    r.B = rng.uniform(n, 1) <
                  t.p_b0_given_a[static_cast<std::size_t>(r.A)]
              ? 0
              : 1;
    records.push_back(r);
  }
  return records;
}

std::vector<RunRecord> sample(const WConfig& cfg, std::int64_t trials,
                              std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sample: trials must be >= 1");
  const CounterRng rng(seed);
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(trials));

  if (cfg.mode == WMode::kConstrain) {
    // Under the boundary constraint every trial is drawn from the
    // renormalized (A,B) joint; M never varies.
    const JointDistribution joint = run_w_constrained_exact(cfg);
    const double p_a0 = joint.prob({0, 0}) + joint.prob({0, 1});
    const std::array<double, 2> p_b0 = {
        p_a0 > kZeroWeight ? joint.prob({0, 0}) / p_a0 : 0.0,
        (1.0 - p_a0) > kZeroWeight ? joint.prob({1, 0}) / (1.0 - p_a0) : 0.0};
    for (std::int64_t trial = 0; trial < trials; ++trial) {
      const auto n = static_cast<std::uint64_t>(trial);
      RunRecord r;
      r.trial = trial;
      r.a = cfg.a.radians();
      r.b = cfg.b.radians();
      r.A = rng.uniform(n, 0) < p_a0 ? 0 : 1;
      r.B = rng.uniform(n, 1) < p_b0[static_cast<std::size_t>(r.A)] ? 0 : 1;
      r.M = cfg.target.value();
      records.push_back(r);
    }
    return records;
  }

  const WTables t = w_tables(cfg);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const auto n = static_cast<std::uint64_t>(trial);
    RunRecord r;
    r.trial = trial;
    r.a = cfg.a.radians();
    r.b = cfg.b.radians();
    r.A = rng.uniform(n, 0) < t.p_a0 ? 0 : 1;
    r.B = rng.uniform(n, 1) <
                  t.p_b0_given_a[static_cast<std::size_t>(r.A)]
              ? 0
              : 1;
    const auto& row = t.m_given_ab[static_cast<std::size_t>(r.A)]
                                  [static_cast<std::size_t>(r.B)];
    r.M = inv_cdf(row, rng.uniform(n, 2));
    r.accepted =
        cfg.mode != WMode::kPostselect || *r.M == cfg.target.value();
    records.push_back(r);
  }
  return records;
}

std::vector<RunRecord> sample(const DelayedVConfig& cfg, std::int64_t trials,
                              std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sample: trials must be >= 1");
  std::array<VTables, 4> tables;
  for (int d = 0; d < 4; ++d) {
    tables[static_cast<std::size_t>(d)] =
        v_tables(VConfig{BellIndex(d), cfg.a, cfg.b});
  }
  constexpr std::array<double, 4> kUniformPrep = {0.25, 0.25, 0.25, 0.25};
  const CounterRng rng(seed);
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const auto n = static_cast<std::uint64_t>(trial);
    RunRecord r;
    r.trial = trial;
    r.a = cfg.a.radians();
    r.b = cfg.b.radians();
    const int d = inv_cdf(kUniformPrep, rng.uniform(n, 0));
    const VTables& t = tables[static_cast<std::size_t>(d)];
    r.A = rng.uniform(n, 1) < t.p_a0 ? 0 : 1;
    r.B = rng.uniform(n, 2) <
                  t.p_b0_given_a[static_cast<std::size_t>(r.A)]
              ? 0
              : 1;
    r.D = d;
    records.push_back(r);
  }
  return records;
}

JointFamily v_family(BellIndex prep) {
  return [prep](BasisAngle a, BasisAngle b) {
    return run_v_exact(VConfig{prep, a, b});
  };
}

JointFamily w_full_family(BellIndex s1, BellIndex s2) {
  return [s1, s2](BasisAngle a, BasisAngle b) {
    return run_w_exact(WConfig::unconstrained(a, b, s1, s2));
  };
}

JointFamily w_marginal_family(BellIndex s1, BellIndex s2) {
  return [s1, s2](BasisAngle a, BasisAngle b) {
    return run_w_exact(WConfig::unconstrained(a, b, s1, s2))
        .marginal({"A", "B"});
  };
}

JointFamily w_postselected_family(BellIndex m, BellIndex s1, BellIndex s2) {
  return [m, s1, s2](BasisAngle a, BasisAngle b) {
    return run_w_exact(WConfig::unconstrained(a, b, s1, s2))
        .condition("M", std::to_string(m.value()));
  };
}

JointFamily w_constrained_family(BellIndex m, BellIndex s1, BellIndex s2) {
  return [m, s1, s2](BasisAngle a, BasisAngle b) {
    return run_w_constrained_exact(WConfig::constrain_to(m, a, b, s1, s2));
  };
}

JointFamily delayed_v_family() {
  return [](BasisAngle a, BasisAngle b) {
    return run_v_delayed_exact(DelayedVConfig{a, b}).marginal({"A", "B"});
  };
}

}  // namespace ccc
