#include "ccc/stats.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "ccc/rng.hpp"
#include "doctest.h"

using namespace ccc;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTsirelson = 2.0 * std::numbers::sqrt2;

}  // namespace

TEST_CASE("correlator reads P(equal) - P(unequal)") {
  const JointDistribution perfect(
      {{"A", {"0", "1"}}, {"B", {"0", "1"}}}, {0.5, 0.0, 0.0, 0.5});
  CHECK(correlator(perfect) == 1.0);

  const JointDistribution uniform(
      {{"A", {"0", "1"}}, {"B", {"0", "1"}}}, {0.25, 0.25, 0.25, 0.25});
  CHECK(correlator(uniform) == 0.0);

  const JointDistribution v = run_v_exact(
      VConfig{BellIndex(0), BasisAngle(0.0), BasisAngle(kPi / 8.0)});
  CHECK(std::abs(correlator(v) - std::cos(kPi / 4.0)) <= 1e-9);

  const JointDistribution three(
      {{"A", {"0", "1"}}, {"B", {"0", "1"}}, {"C", {"0", "1"}}},
      {0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125, 0.125});
  CHECK_THROWS_AS(correlator(three), std::invalid_argument);
  const JointDistribution wide(
      {{"A", {"0", "1", "2"}}, {"B", {"0", "1"}}},
      {0.2, 0.2, 0.2, 0.2, 0.1, 0.1});
  CHECK_THROWS_AS(correlator(wide), std::invalid_argument);
}

TEST_CASE("pearson_correlation on binary indicator values") {
  const JointDistribution anti(
      {{"X", {"0", "1"}}, {"Y", {"0", "1"}}}, {0.0, 0.5, 0.5, 0.0});
  CHECK(std::abs(pearson_correlation(anti, "X", "Y") + 1.0) <= 1e-12);
  const JointDistribution constant(
      {{"X", {"0", "1"}}, {"Y", {"0", "1"}}}, {1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(pearson_correlation(constant, "X", "Y"),
                  std::invalid_argument);
}

TEST_CASE("chsh reaches the quantum bound at the canonical settings") {
  const double s = chsh(v_family(BellIndex(0)), canonical_chsh_settings());
  CHECK(std::abs(s - 2.828427125) <= 1e-6);

  // All four settings equal: S = 2 E(a,a) = 2 for the index-0 preparation.
  const ChshSettings flat{0.3, 0.3, 0.3, 0.3};
  CHECK(std::abs(chsh(v_family(BellIndex(0)), flat) - 2.0) <= 1e-9);
}

TEST_CASE("every deterministic local strategy stays within the classical bound") {
  // A = f(a), B = g(b); f and g range over the four functions {a,a'}->{0,1}.
  for (int f = 0; f < 4; ++f) {
    for (int g = 0; g < 4; ++g) {
      const auto fa = std::array<int, 2>{f & 1, (f >> 1) & 1};
      const auto gb = std::array<int, 2>{g & 1, (g >> 1) & 1};
      const auto e = [&](int ai, int bi) {
        return fa[static_cast<std::size_t>(ai)] ==
                       gb[static_cast<std::size_t>(bi)]
                   ? 1.0
                   : -1.0;
      };
      const double s = e(0, 0) - e(0, 1) + e(1, 0) + e(1, 1);
      CAPTURE(f);
      CAPTURE(g);
      CHECK(std::abs(s) <= 2.0 + 1e-9);
    }
  }
}

TEST_CASE("random settings never exceed the Tsirelson bound") {
  const CounterRng rng(2024);
  const std::vector<JointFamily> families = {
      v_family(BellIndex(0)), v_family(BellIndex(3)),
      w_constrained_family(BellIndex(1)), w_postselected_family(BellIndex(2)),
      delayed_v_family()};
  int checked = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const ChshSettings s{rng.uniform(i, 0) * kPi, rng.uniform(i, 1) * kPi,
                         rng.uniform(i, 2) * kPi, rng.uniform(i, 3) * kPi};
    const auto& family = families[i % families.size()];
    const double value = chsh(family, s);
    CHECK(std::abs(value) <= kTsirelson + 1e-6);
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("postselected W violates CHSH at per-outcome canonical settings") {
  for (int m = 0; m < 4; ++m) {
    const double s = chsh(w_postselected_family(BellIndex(m)),
                          canonical_chsh_settings_for(BellIndex(m)));
    CAPTURE(m);
    CHECK(std::abs(std::abs(s) - kTsirelson) <= 1e-6);
  }
}

TEST_CASE("no_signaling_gap vanishes for the exact families") {
  const std::vector<double> grid = default_settings_grid();
  CHECK(no_signaling_gap(v_family(BellIndex(0)), grid, grid) <= 1e-9);
  CHECK(no_signaling_gap(w_constrained_family(BellIndex(0)), grid, grid) <=
        1e-9);
}

TEST_CASE("no_signaling_gap flags a signaling family") {
  // B's outcome tracks a directly.
  const JointFamily signaling = [](BasisAngle a, BasisAngle) {
    const bool zero = std::abs(a.radians()) < 1e-9;
    return JointDistribution(
        {{"A", {"0", "1"}}, {"B", {"0", "1"}}},
        zero ? std::vector<double>{0.5, 0.0, 0.5, 0.0}
             : std::vector<double>{0.0, 0.5, 0.0, 0.5});
  };
  const std::vector<double> grid = {0.0, kPi / 4.0};
  CHECK(std::abs(no_signaling_gap(signaling, grid, grid) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(no_signaling_gap(signaling, {}, grid),
                  std::invalid_argument);
}

TEST_CASE("selection_sensitivity certifies settings-dependent membership") {
  const std::vector<SettingsPair> canonical_pair = {
      {0.0, kPi / 8.0, kPi / 4.0, kPi / 8.0}};

  // The a+b-type outcomes move strongly under a 0 -> pi/4 shift...
  const double s1 =
      selection_sensitivity(w_full_family(), BellIndex(1), canonical_pair);
  const double s2 =
      selection_sensitivity(w_full_family(), BellIndex(2), canonical_pair);
  CHECK(std::abs(s1 - std::cos(kPi / 4.0) / 2.0) <= 1e-9);
  CHECK(std::abs(s2 - std::cos(kPi / 4.0) / 2.0) <= 1e-9);
  CHECK(s1 > 0.05);
  CHECK(s2 > 0.05);

  // ...while the a-b-type outcomes are blind to this particular pair, whose
  // two joints coincide; a 0 -> pi/8 shift moves them too.
  const double s0 =
      selection_sensitivity(w_full_family(), BellIndex(0), canonical_pair);
  CHECK(s0 <= 1e-12);
  const std::vector<SettingsPair> eighth_pair = {
      {0.0, kPi / 8.0, kPi / 8.0, kPi / 8.0}};
  const double s0_eighth =
      selection_sensitivity(w_full_family(), BellIndex(0), eighth_pair);
  CHECK(s0_eighth > 0.05);

  // Nothing moves when the settings do not move.
  const std::vector<SettingsPair> fixed = {{0.4, 0.7, 0.4, 0.7}};
  CHECK(selection_sensitivity(w_full_family(), BellIndex(0), fixed) == 0.0);
}

TEST_CASE("selection_sensitivity is exactly zero once M is forced") {
  const BellIndex target(0);
  const JointFamily forced = [target](BasisAngle a, BasisAngle b) {
    return run_w_constrained_exact(WConfig::constrain_to(target, a, b))
        .with_constant_variable("M", {"0", "1", "2", "3"}, target.value());
  };
  const std::vector<SettingsPair> pairs = {
      {0.0, kPi / 8.0, kPi / 4.0, kPi / 8.0},
      {0.0, 0.0, 0.0, kPi / 8.0},
  };
  CHECK(selection_sensitivity(forced, target, pairs) == 0.0);
}
