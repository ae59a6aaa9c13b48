#include "ccc/qcore.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

using namespace ccc;

namespace {

constexpr double kPi = std::numbers::pi;

void check_amplitudes(const StateVector& state,
                      const std::vector<Amplitude>& expected,
                      double tol = 1e-12) {
  REQUIRE(state.dim() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(state.amplitude(i) - expected[i]) <= tol);
  }
}

}  // namespace

TEST_CASE("bell_state follows the pinned index convention") {
  const double r = oracle::kInvSqrt2;
  check_amplitudes(bell_state(BellIndex(0)), {r, 0.0, 0.0, r});
  check_amplitudes(bell_state(BellIndex(1)), {0.0, r, r, 0.0});
  check_amplitudes(bell_state(BellIndex(2)), {r, 0.0, 0.0, -r});
  check_amplitudes(bell_state(BellIndex(3)), {0.0, r, -r, 0.0});
}

TEST_CASE("BellIndex rejects values outside 0..3") {
  CHECK_THROWS_AS(BellIndex(4), std::out_of_range);
  CHECK_THROWS_AS(BellIndex(-1), std::out_of_range);
}

TEST_CASE("BasisAngle validates and canonicalizes") {
  CHECK_THROWS_AS(BasisAngle(std::nan("")), std::invalid_argument);
  const BasisAngle theta(0.3);
  const BasisAngle shifted(0.3 + kPi);
  CHECK(std::abs(theta.canonical() - shifted.canonical()) <= 1e-12);
  const BasisAngle negative(-0.2);
  CHECK(negative.canonical() >= 0.0);
  CHECK(negative.canonical() < kPi);
}

TEST_CASE("StateVector rejects malformed input") {
  CHECK_THROWS_AS(StateVector(1, {1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(StateVector(1, {0.8, 0.0}), std::invalid_argument);  // unnormalized
  CHECK_THROWS_AS(StateVector(1, {{1e300, 0.0}, {0.0, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("tensor expands in big-endian label order") {
  const StateVector zero = basis_state(1, 0);
  check_amplitudes(tensor(zero, zero), {1.0, 0.0, 0.0, 0.0});

  const double r = oracle::kInvSqrt2;
  check_amplitudes(tensor(bell_state(BellIndex(0)), zero),
                   {r, 0.0, 0.0, 0.0, 0.0, 0.0, r, 0.0});

  const StateVector two_pairs =
      tensor(bell_state(BellIndex(0)), bell_state(BellIndex(0)));
  std::vector<Amplitude> expected(16, 0.0);
  expected[0b0000] = 0.5;
  expected[0b0011] = 0.5;
  expected[0b1100] = 0.5;
  expected[0b1111] = 0.5;
  check_amplitudes(two_pairs, expected);
}

TEST_CASE("measure_distribution on a shared basis shows perfect correlation") {
  const MeasurementSplit split =
      measure_distribution(bell_state(BellIndex(0)), 0, BasisAngle(0.0));
  CHECK(std::abs(split.p0 - 0.5) <= 1e-12);
  CHECK(std::abs(split.p1 - 0.5) <= 1e-12);
  check_amplitudes(*split.post0, {1.0, 0.0, 0.0, 0.0});
  check_amplitudes(*split.post1, {0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("measure_distribution on an eigenstate leaves one branch") {
  const MeasurementSplit split =
      measure_distribution(basis_state(1, 0), 0, BasisAngle(0.0));
  CHECK(std::abs(split.p0 - 1.0) <= 1e-12);
  CHECK(split.p1 <= 1e-15);
  CHECK(split.post0.has_value());
  CHECK(!split.post1.has_value());
}

TEST_CASE("measure_distribution collapses the partner qubit") {
  // Hand-expanded four-vector: outcome 0 at angle pi/8 on one half of a
  // Bell-0 pair leaves the partner in cos|0> + sin|1> at the same angle.
  const double c = std::cos(kPi / 8.0);
  const double s = std::sin(kPi / 8.0);
  const MeasurementSplit split =
      measure_distribution(bell_state(BellIndex(0)), 0, BasisAngle(kPi / 8.0));
  CHECK(std::abs(split.p0 - 0.5) <= 1e-12);
  check_amplitudes(*split.post0, {c * c, c * s, s * c, s * s}, 1e-12);
}

TEST_CASE("measure_distribution rejects a bad qubit index") {
  CHECK_THROWS_AS(
      measure_distribution(bell_state(BellIndex(0)), 2, BasisAngle(0.0)),
      std::out_of_range);
}

TEST_CASE("sample_measurement follows the threshold rule") {
  const StateVector phi = bell_state(BellIndex(0));
  const SampledMeasurement low = sample_measurement(phi, 0, BasisAngle(0.0), 0.3);
  CHECK(low.bit == 0);
  check_amplitudes(low.post, {1.0, 0.0, 0.0, 0.0});

  const SampledMeasurement high =
      sample_measurement(phi, 0, BasisAngle(0.0), 0.7);
  CHECK(high.bit == 1);
  check_amplitudes(high.post, {0.0, 0.0, 0.0, 1.0});

  const SampledMeasurement sure =
      sample_measurement(basis_state(1, 0), 0, BasisAngle(0.0), 0.999);
  CHECK(sure.bit == 0);

  CHECK_THROWS_AS(sample_measurement(phi, 0, BasisAngle(0.0), 1.0),
                  std::out_of_range);
  CHECK_THROWS_AS(sample_measurement(phi, 0, BasisAngle(0.0), -0.1),
                  std::out_of_range);
}

TEST_CASE("bell_project fixes a Bell state onto itself") {
  const BellProjection projection =
      bell_project(bell_state(BellIndex(0)), 0, 1, BellIndex(0));
  CHECK(std::abs(projection.weight - 1.0) <= 1e-12);
  check_amplitudes(*projection.post, bell_state(BellIndex(0)).amplitudes());
}

TEST_CASE("bell_project swaps entanglement onto the outer pair") {
  const StateVector pairs =
      tensor(bell_state(BellIndex(0)), bell_state(BellIndex(0)));
  const auto table = oracle::bell_table();
  for (int m = 0; m < 4; ++m) {
    CAPTURE(m);
    const BellProjection projection = bell_project(pairs, 1, 2, BellIndex(m));
    CHECK(std::abs(projection.weight - 0.25) <= 1e-12);
    CHECK(std::abs(projection.weight - oracle::bell_weight(pairs, 1, 2, m)) <=
          1e-12);

    // Expected post state: Bell_m on the inner pair (q1,q2) and Bell_m on
    // the outer pair (q0,q3), up to a global sign.
    std::vector<Amplitude> expected(16, 0.0);
    for (int inner = 0; inner < 4; ++inner) {
      for (int outer = 0; outer < 4; ++outer) {
        const std::size_t index =
            (static_cast<std::size_t>(outer >> 1) << 3) |
            (static_cast<std::size_t>(inner >> 1) << 2) |
            (static_cast<std::size_t>(inner & 1) << 1) |
            static_cast<std::size_t>(outer & 1);
        expected[index] = table[static_cast<std::size_t>(m)]
                               [static_cast<std::size_t>(inner)] *
                          table[static_cast<std::size_t>(m)]
                               [static_cast<std::size_t>(outer)];
      }
    }
    const StateVector& post = *projection.post;
    double sign = 0.0;
    for (std::size_t k = 0; k < 16 && sign == 0.0; ++k) {
      if (std::abs(expected[k]) > 1e-9) {
        sign = post.amplitude(k).real() * expected[k].real() < 0 ? -1.0 : 1.0;
      }
    }
    for (std::size_t k = 0; k < 16; ++k) {
      CAPTURE(k);
      CHECK(std::abs(post.amplitude(k) - sign * expected[k]) <= 1e-12);
    }
  }
}

TEST_CASE("bell_project weight matches the embedded-projector oracle") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const StateVector state = oracle::random_state(n, seed);
    const int qi = static_cast<int>(seed % static_cast<std::uint64_t>(n));
    const int qj = (qi + 1) % n;
    for (int m = 0; m < 4; ++m) {
      CAPTURE(seed);
      CAPTURE(m);
      const BellProjection projection = bell_project(state, qi, qj, BellIndex(m));
      CHECK(std::abs(projection.weight -
                     oracle::bell_weight(state, qi, qj, m)) <= 1e-12);
    }
  }
}

TEST_CASE("bell_project weights are complete and posts normalized") {
  for (std::uint64_t seed = 20; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const StateVector state = oracle::random_state(n, seed);
    const int qi = static_cast<int>((seed / 3) % static_cast<std::uint64_t>(n));
    const int qj = (qi + 1 + static_cast<int>(seed % static_cast<std::uint64_t>(n - 1))) % n;
    if (qi == qj) continue;
    double total = 0.0;
    for (int m = 0; m < 4; ++m) {
      const BellProjection projection = bell_project(state, qi, qj, BellIndex(m));
      total += projection.weight;
      if (projection.post) {
        CHECK(std::abs(projection.post->norm_squared() - 1.0) <= 1e-12);
      }
    }
    CAPTURE(seed);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("bell_project reports zero-probability outcomes") {
  const BellProjection projection =
      bell_project(basis_state(2, 0), 0, 1, BellIndex(3));
  CHECK(projection.weight <= 1e-15);
  CHECK(!projection.post.has_value());
  CHECK_THROWS_AS(projection.post_or_throw(), ZeroProbabilityError);

  CHECK_THROWS_AS(bell_project(basis_state(2, 0), 0, 0, BellIndex(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(bell_project(basis_state(2, 0), 0, 2, BellIndex(0)),
                  std::out_of_range);
}

TEST_CASE("measurement probabilities are pi-periodic up to label order") {
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    const StateVector state = oracle::random_state(2, seed);
    const double theta = 0.37 * static_cast<double>(seed);
    const MeasurementSplit base =
        measure_distribution(state, 0, BasisAngle(theta));
    const MeasurementSplit shifted =
        measure_distribution(state, 0, BasisAngle(theta + kPi));
    // Probability multiset is unchanged by a pi shift.
    const double lo0 = std::min(base.p0, base.p1);
    const double hi0 = std::max(base.p0, base.p1);
    const double lo1 = std::min(shifted.p0, shifted.p1);
    const double hi1 = std::max(shifted.p0, shifted.p1);
    CHECK(std::abs(lo0 - lo1) <= 1e-12);
    CHECK(std::abs(hi0 - hi1) <= 1e-12);
  }
}

TEST_CASE("measurement posts stay normalized on random states") {
  for (std::uint64_t seed = 70; seed < 82; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const StateVector state = oracle::random_state(n, seed);
    const int qubit = static_cast<int>(seed % static_cast<std::uint64_t>(n));
    const MeasurementSplit split =
        measure_distribution(state, qubit, BasisAngle(0.1 * static_cast<double>(seed)));
    CHECK(std::abs(split.p0 + split.p1 - 1.0) <= 1e-12);
    if (split.post0) CHECK(std::abs(split.post0->norm_squared() - 1.0) <= 1e-12);
    if (split.post1) CHECK(std::abs(split.post1->norm_squared() - 1.0) <= 1e-12);
  }
}

TEST_CASE("joint measurement of a Bell-0 pair obeys the correlator law") {
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double a = static_cast<double>(i) * kPi / 7.0;
      const double b = static_cast<double>(j) * kPi / 9.0;
      const MeasurementSplit at_a =
          measure_distribution(bell_state(BellIndex(0)), 0, BasisAngle(a));
      const MeasurementSplit at_b0 =
          measure_distribution(*at_a.post0, 1, BasisAngle(b));
      const MeasurementSplit at_b1 =
          measure_distribution(*at_a.post1, 1, BasisAngle(b));
      const double p_equal = at_a.p0 * at_b0.p0 + at_a.p1 * at_b1.p1;
      const double p_unequal = at_a.p0 * at_b0.p1 + at_a.p1 * at_b1.p0;
      CAPTURE(a);
      CAPTURE(b);
      CHECK(std::abs(p_equal - p_unequal - std::cos(2.0 * (a - b))) <= 1e-9);
    }
  }
}
