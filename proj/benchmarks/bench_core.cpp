#include <benchmark/benchmark.h>

#include <numbers>

#include "ccc/causal.hpp"
#include "ccc/experiments.hpp"
#include "ccc/models.hpp"
#include "ccc/stats.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

void BM_BellProject(benchmark::State& state) {
  const ccc::StateVector pairs = ccc::tensor(ccc::bell_state(ccc::BellIndex(0)),
                                             ccc::bell_state(ccc::BellIndex(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ccc::bell_project(pairs, 1, 2, ccc::BellIndex(0)).weight);
  }
}
BENCHMARK(BM_BellProject);

void BM_RunWExact(benchmark::State& state) {
  const ccc::WConfig cfg = ccc::WConfig::unconstrained(
      ccc::BasisAngle(0.0), ccc::BasisAngle(kPi / 8.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccc::run_w_exact(cfg).n_cells());
  }
}
BENCHMARK(BM_RunWExact);

void BM_SampleW(benchmark::State& state) {
  const ccc::WConfig cfg = ccc::WConfig::postselect_on(
      ccc::BellIndex(0), ccc::BasisAngle(0.0), ccc::BasisAngle(kPi / 8.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccc::sample(cfg, state.range(0), 42).size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleW)->Arg(10000);

void BM_Chsh(benchmark::State& state) {
  const ccc::JointFamily family = ccc::v_family(ccc::BellIndex(0));
  const ccc::ChshSettings settings = ccc::canonical_chsh_settings();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccc::chsh(family, settings));
  }
}
BENCHMARK(BM_Chsh);

void BM_IvyJoint(benchmark::State& state) {
  const ccc::DiscreteScm ivy = ccc::ivy_scm();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ivy.joint().n_cells());
  }
}
BENCHMARK(BM_IvyJoint);

void BM_ClassifyToy(benchmark::State& state) {
  const ccc::DiscreteScm toy =
      ccc::toy_dces(ccc::BasisAngle(0.0), ccc::BasisAngle(kPi / 8.0), false);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ccc::classify_ccc(toy, "A", "B", ccc::kToyAcceptNode, ccc::kToyAccept)
            .dependence);
  }
}
BENCHMARK(BM_ClassifyToy);

void BM_FlipRate(benchmark::State& state) {
  const ccc::DiscreteScm left =
      ccc::toy_dces(ccc::BasisAngle(0.0), ccc::BasisAngle(kPi / 8.0), true);
  const ccc::DiscreteScm right = ccc::toy_dces(
      ccc::BasisAngle(kPi / 8.0), ccc::BasisAngle(kPi / 8.0), true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ccc::counterfactual_flip_rate(left, right, "B"));
  }
}
BENCHMARK(BM_FlipRate);

}  // namespace

BENCHMARK_MAIN();
