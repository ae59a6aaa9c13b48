#include <cmath>
#include <numbers>

#include "ccc/experiments.hpp"
#include "ccc/rng.hpp"
#include "doctest.h"

using namespace ccc;

namespace {

constexpr double kPi = std::numbers::pi;

bool same_records(const std::vector<RunRecord>& x,
                  const std::vector<RunRecord>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].trial != y[i].trial || x[i].a != y[i].a || x[i].b != y[i].b ||
        x[i].A != y[i].A || x[i].B != y[i].B || x[i].M != y[i].M ||
        x[i].D != y[i].D || x[i].accepted != y[i].accepted ||
        x[i].weight != y[i].weight) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("CounterRng is a pure function of (seed, trial, stream)") {
  const CounterRng rng(42);
  CHECK(rng.uniform(7, 1) == CounterRng(42).uniform(7, 1));
  CHECK(rng.uniform(7, 1) != rng.uniform(7, 2));
  CHECK(rng.uniform(7, 1) != rng.uniform(8, 1));
  CHECK(rng.uniform(7, 1) != CounterRng(43).uniform(7, 1));

  double sum = 0.0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const double u = rng.uniform(t, 0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  // Mean of 1e4 uniforms: sigma = 1/sqrt(12e4) ~ 0.0029.
  CHECK(std::abs(sum / 10000.0 - 0.5) < 4.0 * 0.0029);
}

TEST_CASE("sampling is bit-reproducible") {
  const VConfig v{BellIndex(0), BasisAngle(0.2), BasisAngle(0.9)};
  CHECK(same_records(sample(v, 512, 7), sample(v, 512, 7)));

  const WConfig w =
      WConfig::postselect_on(BellIndex(1), BasisAngle(0.0), BasisAngle(0.4));
  CHECK(same_records(sample(w, 512, 7), sample(w, 512, 7)));
  CHECK(!same_records(sample(w, 512, 7), sample(w, 512, 8)));

  const DelayedVConfig d{BasisAngle(0.1), BasisAngle(0.8)};
  CHECK(same_records(sample(d, 512, 7), sample(d, 512, 7)));
}

TEST_CASE("sample rejects bad trial counts") {
  CHECK_THROWS_AS(
      sample(VConfig{BellIndex(0), BasisAngle(0.0), BasisAngle(0.0)}, 0, 1),
      std::invalid_argument);
}

TEST_CASE("aligned V wings agree on every sampled trial") {
  const auto records =
      sample(VConfig{BellIndex(0), BasisAngle(0.0), BasisAngle(0.0)}, 10000, 42);
  for (const auto& r : records) {
    REQUIRE(r.A == r.B);
    CHECK(!r.M.has_value());
    CHECK(!r.D.has_value());
    CHECK(r.accepted);
  }
}

TEST_CASE("postselected W keeps rejected trials and accepts a quarter") {
  const auto records = sample(
      WConfig::postselect_on(BellIndex(0), BasisAngle(0.0), BasisAngle(kPi / 8.0)),
      100000, 42);
  double accepted = 0.0;
  bool saw_rejected = false;
  for (const auto& r : records) {
    REQUIRE(r.M.has_value());
    if (r.accepted) {
      CHECK(*r.M == 0);
      accepted += 1.0;
    } else {
      saw_rejected = true;
    }
  }
  CHECK(saw_rejected);
  const double n = static_cast<double>(records.size());
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(accepted / n - 0.25) <= 3.0 * sigma);
}

TEST_CASE("constrained W sampling never rejects") {
  const auto records = sample(
      WConfig::constrain_to(BellIndex(2), BasisAngle(0.0), BasisAngle(kPi / 8.0)),
      20000, 5);
  for (const auto& r : records) {
    REQUIRE(r.accepted);
    REQUIRE(r.M.has_value());
    CHECK(*r.M == 2);
  }
}

TEST_CASE("sampled frequencies track the exact joints") {
  const std::int64_t n = 100000;
  const double dn = static_cast<double>(n);

  const VConfig v{BellIndex(0), BasisAngle(0.0), BasisAngle(kPi / 8.0)};
  const JointDistribution v_exact = run_v_exact(v);
  std::vector<double> counts(4, 0.0);
  for (const auto& r : sample(v, n, 11)) {
    counts[static_cast<std::size_t>(r.A * 2 + r.B)] += 1.0;
  }
  for (int cell = 0; cell < 4; ++cell) {
    const double p = v_exact.prob(static_cast<std::size_t>(cell));
    const double sigma = std::sqrt(p * (1.0 - p) / dn);
    CHECK(std::abs(counts[static_cast<std::size_t>(cell)] / dn - p) <=
          4.0 * sigma);
  }

  const DelayedVConfig d{BasisAngle(0.0), BasisAngle(kPi / 8.0)};
  const JointDistribution d_exact = run_v_delayed_exact(d);
  std::vector<double> d_counts(16, 0.0);
  for (const auto& r : sample(d, n, 12)) {
    d_counts[static_cast<std::size_t>(r.A * 8 + r.B * 4 + *r.D)] += 1.0;
  }
  for (std::size_t cell = 0; cell < 16; ++cell) {
    const double p = d_exact.prob(cell);
    const double sigma = std::sqrt(p * (1.0 - p) / dn);
    CHECK(std::abs(d_counts[cell] / dn - p) <= 4.0 * sigma);
  }
}
