// Evaluators for the four experiment shapes: the two-particle V experiment,
// the four-particle W experiment (unconstrained, postselected, or with its
// swapping outcome fixed by a boundary constraint), and the delayed-readout
// V variant with a uniformly mixed preparation. Each comes in an exact form
// (closed joint distribution) and a seeded sampled form.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ccc/joint.hpp"
#include "ccc/qcore.hpp"

namespace ccc {

struct VConfig {
  BellIndex prep{0};   // which Bell state the source emits
  BasisAngle a{0.0};   // wing-A measurement angle
  BasisAngle b{0.0};   // wing-B measurement angle
};

enum class WMode { kUnconstrained, kPostselect, kConstrain };

// The W experiment: source1 feeds (A-wing, inner-1), source2 feeds
// (inner-2, B-wing); the inner pair meets a Bell-basis measurement M.
// In kPostselect, target marks the accepted M outcome; in kConstrain, M is
// forced to target by a final boundary condition (project and renormalize).
struct WConfig {
  BasisAngle a{0.0};
  BasisAngle b{0.0};
  BellIndex source1{0};
  BellIndex source2{0};
  WMode mode = WMode::kUnconstrained;
  BellIndex target{0};  // meaningful for kPostselect / kConstrain only

  static WConfig unconstrained(BasisAngle a, BasisAngle b,
                               BellIndex s1 = BellIndex(0),
                               BellIndex s2 = BellIndex(0));
  static WConfig postselect_on(BellIndex m, BasisAngle a, BasisAngle b,
                               BellIndex s1 = BellIndex(0),
                               BellIndex s2 = BellIndex(0));
  static WConfig constrain_to(BellIndex m, BasisAngle a, BasisAngle b,
                              BellIndex s1 = BellIndex(0),
                              BellIndex s2 = BellIndex(0));
};

// V experiment whose preparation is one of the four Bell states with equal
// probability, recorded by a device read out (at D) only after both wings.
struct DelayedVConfig {
  BasisAngle a{0.0};
  BasisAngle b{0.0};
};

// One sampled trial. M is present exactly for W runs, D exactly for
// delayed-V runs. Rejected postselection trials are kept with
// accepted = false so the discarded complement stays inspectable.
struct RunRecord {
  std::int64_t trial = 0;
  double a = 0.0;
  double b = 0.0;
  int A = 0;
  int B = 0;
  std::optional<int> M;
  std::optional<int> D;
  bool accepted = true;
  double weight = 1.0;
};

// Exact joint over (A, B).
JointDistribution run_v_exact(const VConfig& cfg);

// Exact joint over (A, B, M) for the unconstrained W experiment, computed
// along the delayed-choice event order: collapse at A, collapse at B, then
// the Bell projection on the inner pair. (The projectors commute, so the
// joint itself is order-independent; tests assert that.)
JointDistribution run_w_exact(const WConfig& cfg);

// Exact joint over (A, B) with M fixed to cfg.target by final-state
// projection: each (A, B) branch is weighted by its Bell-m projection
// probability, then the joint is renormalized. Equals the unconstrained
// joint conditioned on M = target. Throws ImpossibleConstraintError when
// the constraint carries no weight.
JointDistribution run_w_constrained_exact(const WConfig& cfg);

// Exact joint over (A, B, D); D is the delayed readout of the uniformly
// random preparation, so P(D=d) = 1/4 and each D-slice is a V joint.
JointDistribution run_v_delayed_exact(const DelayedVConfig& cfg);

// Seeded sampling. All randomness of trial t comes from CounterRng uniforms
// (seed, t, stream); streams are, in event order:
//   V:         0 -> A, 1 -> B
//   W:         0 -> A, 1 -> B, 2 -> M     (delayed-choice order)
//   delayed-V: 0 -> preparation record D, 1 -> A, 2 -> B
// Identical (cfg, trials, seed) produce bit-identical records.
std::vector<RunRecord> sample(const VConfig& cfg, std::int64_t trials,
                              std::uint64_t seed);
std::vector<RunRecord> sample(const WConfig& cfg, std::int64_t trials,
                              std::uint64_t seed);
std::vector<RunRecord> sample(const DelayedVConfig& cfg, std::int64_t trials,
                              std::uint64_t seed);

// Experiment families as functions of the two wing settings; these feed the
// CHSH / no-signaling functionals.
using JointFamily = std::function<JointDistribution(BasisAngle, BasisAngle)>;

JointFamily v_family(BellIndex prep);
JointFamily w_full_family(BellIndex s1 = BellIndex(0),
                          BellIndex s2 = BellIndex(0));  // joint over (A,B,M)
JointFamily w_marginal_family(BellIndex s1 = BellIndex(0),
                              BellIndex s2 = BellIndex(0));  // (A,B) marginal
JointFamily w_postselected_family(BellIndex m, BellIndex s1 = BellIndex(0),
                                  BellIndex s2 = BellIndex(0));
JointFamily w_constrained_family(BellIndex m, BellIndex s1 = BellIndex(0),
                                 BellIndex s2 = BellIndex(0));
JointFamily delayed_v_family();  // (A,B) marginal of the full mixture

}  // namespace ccc
