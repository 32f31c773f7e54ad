#include <doctest.h>

#include <random>
#include <stdexcept>

#include "coopdyn/analysis.hpp"
#include "oracles.hpp"

using namespace coopdyn;

namespace {

ModelInstance linear_model(double r, double k) {
  return ModelInstance(ReducedGame(r), InteractionStrength::linear(k));
}

std::vector<Stability> stabilities(const RegimeReport& report) {
  std::vector<Stability> out;
  for (const auto& fp : report.fixed_points) out.push_back(fp.stability);
  return out;
}

std::size_t stable_count(const RegimeReport& report) {
  std::size_t n = 0;
  for (const auto& fp : report.fixed_points) n += fp.stability == Stability::Stable;
  return n;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("critical thresholds") {
  const Thresholds t = critical_thresholds(0.2);
  CHECK(t.k1 == doctest::Approx(1.0 / 1.2).epsilon(1e-15));
  CHECK(t.k2 == doctest::Approx(1.5).epsilon(1e-15));
  const Thresholds half = critical_thresholds(0.5);
  CHECK(half.k1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(half.k2 == doctest::Approx(0.75).epsilon(1e-15));
  const Thresholds near_one = critical_thresholds(0.9);
  CHECK(near_one.k1 == doctest::Approx(0.5263157894736842).epsilon(1e-14));
  CHECK(near_one.k2 == doctest::Approx(0.5277777777777778).epsilon(1e-14));
  CHECK(near_one.k1 < near_one.k2);
  CHECK_THROWS_AS(critical_thresholds(0.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_thresholds(1.5), std::invalid_argument);
}

TEST_CASE("property: threshold ordering and ranges") {
  for (int i = 1; i < 1000; ++i) {
    const double r = i / 1000.0;
    const Thresholds t = critical_thresholds(r);
    REQUIRE(t.k1 < t.k2);
    REQUIRE(t.k1 > 0.5);
    REQUIRE(t.k1 < 1.0);
    // k2 > 1 only while r < 1/3 (e.g. k2 = 0.75 at r = 0.5).
    REQUIRE((t.k2 > 1.0) == (r < 1.0 / 3.0));
    REQUIRE(t.k2 == doctest::Approx((1.0 + r) / (4.0 * r)).epsilon(1e-14));
  }
}

TEST_CASE("coexistence window of the donation game") {
  const CoexistenceWindow w = coexistence_window(DonationGame(5, 1));
  CHECK(w.lower == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(w.upper == doctest::Approx(1.5).epsilon(1e-15));
  const Thresholds t = critical_thresholds(donation_to_reduced(DonationGame(5, 1)).r());
  CHECK(w.lower == doctest::Approx(t.k1).epsilon(1e-14));
  CHECK(w.upper == doctest::Approx(t.k2).epsilon(1e-14));
}

TEST_CASE("internal fixed point, constant strength") {
  CHECK(*internal_fixed_point_constant(0.5, 0.2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_FALSE(internal_fixed_point_constant(0.9, 0.2).has_value());
  CHECK(*internal_fixed_point_constant(0.0, 0.2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK_FALSE(internal_fixed_point_constant(1.0 / 1.2, 0.2).has_value());
  CHECK_THROWS_AS(internal_fixed_point_constant(1.0, 0.2), std::invalid_argument);
}

TEST_CASE("internal fixed points, linear strength") {
  const auto coexist = internal_fixed_points_linear(1.0, 0.2);
  REQUIRE(coexist.size() == 2);
  CHECK(coexist[0] == doctest::Approx(0.21132486540518712).epsilon(1e-13));
  CHECK(coexist[1] == doctest::Approx(0.78867513459481288).epsilon(1e-13));

  const auto bistable = internal_fixed_points_linear(0.5, 0.2);
  REQUIRE(bistable.size() == 1);
  CHECK(bistable[0] == doctest::Approx(0.18350341907227397).epsilon(1e-13));

  const auto critical = internal_fixed_points_linear(1.5, 0.2);
  REQUIRE(critical.size() == 1);
  CHECK(critical[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK(internal_fixed_points_linear(2.0, 0.2).empty());
  CHECK_THROWS_AS(internal_fixed_points_linear(0.0, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(internal_fixed_points_linear(-1.0, 0.2), std::invalid_argument);
}

TEST_CASE("property: roots agree with a bisection oracle on g") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> rs(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = rs(rng);
    const Thresholds t = critical_thresholds(r);
    std::uniform_real_distribution<double> ks(0.05, 1.3 * t.k2);
    const double k = ks(rng);
    const auto roots = internal_fixed_points_linear(k, r);
    const auto expected =
        oracle::sign_change_roots([&](double x) { return oracle::gain_linear(r, k, x); });
    REQUIRE(roots.size() == expected.size());
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CHECK(std::abs(roots[i] - expected[i]) <= 1e-6);
      CHECK(std::abs(linear_model(r, k).growth_function(roots[i])) <= 1e-9);
    }
  }
}

TEST_CASE("property: Vieta relations and existence boundary") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> rs(0.01, 0.99);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double r = rs(rng);
    const double k2 = critical_thresholds(r).k2;
    const double k = 0.01 + 2.0 * k2 * frac(rng);
    const bool exists = !internal_fixed_points_linear(k, r).empty();
    if (const auto roots = linear_growth_roots(k, r)) {
      CHECK(roots->first <= roots->second);
      CHECK(roots->first + roots->second == doctest::Approx(1.0 / k).epsilon(1e-9));
      CHECK(roots->first * roots->second ==
            doctest::Approx(r / (k * (1.0 + r))).epsilon(1e-9));
      CHECK(roots->first > 0.0);
    }
    // Real roots exist iff k <= k2; but a root may also sit outside (0, 1).
    if (k > k2 * (1.0 + 1e-9)) CHECK_FALSE(exists);
    if (k <= k2 && k > critical_thresholds(r).k1) CHECK(exists);
  }
}

TEST_CASE("property: no parameter puts both real roots above 1") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> rs(0.001, 0.999);
  std::uniform_real_distribution<double> ks(0.001, 20.0);
  for (int trial = 0; trial < 5000; ++trial) {
    const double r = rs(rng);
    const double k = ks(rng);
    const double disc = 1.0 - 4.0 * k * r / (1.0 + r);
    if (disc < 0.0) continue;
    const double smaller = (1.0 - std::sqrt(disc)) / (2.0 * k);
    REQUIRE(smaller < 1.0);
  }
}

TEST_CASE("classify fixed point") {
  CHECK(classify_fixed_point(linear_model(0.2, 1.0), 0.0).stability == Stability::Stable);
  const FixedPoint one = classify_fixed_point(linear_model(0.2, 0.5), 1.0);
  CHECK(one.stability == Stability::Stable);
  CHECK(one.origin == FixedPointOrigin::Boundary);
  const FixedPoint semi = classify_fixed_point(linear_model(0.2, 1.5), 1.0 / 3.0);
  CHECK(semi.stability == Stability::SemiStable);
  CHECK(semi.origin == FixedPointOrigin::Internal);

  CHECK_THROWS_AS(classify_fixed_point(linear_model(0.2, 1.0), 0.5), std::invalid_argument);
  const ModelInstance general(PayoffMatrix(3, 0, 5, 1), InteractionStrength::constant(0.5));
  CHECK_THROWS_AS(classify_fixed_point(general, 0.0), std::domain_error);
}

TEST_CASE("classify regime, linear strength") {
  const RegimeReport coexist = classify_regime(InteractionStrength::linear(1.0), 0.2);
  CHECK(coexist.regime == Regime::Coexistence);
  REQUIRE(coexist.fixed_points.size() == 4);
  CHECK(coexist.fixed_points[2].location == doctest::Approx(0.7886751345948129).epsilon(1e-13));
  CHECK(stabilities(coexist) == std::vector{Stability::Stable, Stability::Unstable,
                                            Stability::Stable, Stability::Unstable});

  const RegimeReport defectors = classify_regime(InteractionStrength::linear(2.0), 0.2);
  CHECK(defectors.regime == Regime::DefectorDominance);
  CHECK(stabilities(defectors) == std::vector{Stability::Stable, Stability::Unstable});

  const RegimeReport bistable = classify_regime(InteractionStrength::linear(0.5), 0.2);
  CHECK(bistable.regime == Regime::Bistable);
  CHECK(stabilities(bistable) ==
        std::vector{Stability::Stable, Stability::Unstable, Stability::Stable});
}

TEST_CASE("classify regime, constant strength") {
  const RegimeReport bistable = classify_regime(InteractionStrength::constant(0.5), 0.2);
  CHECK(bistable.regime == Regime::Bistable);
  REQUIRE(bistable.fixed_points.size() == 3);
  CHECK(bistable.fixed_points[1].location == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(bistable.fixed_points[1].stability == Stability::Unstable);

  const RegimeReport defectors = classify_regime(InteractionStrength::constant(0.9), 0.2);
  CHECK(defectors.regime == Regime::DefectorDominance);
  CHECK(stabilities(defectors) == std::vector{Stability::Stable, Stability::Unstable});

  const RegimeReport classic = classify_regime(InteractionStrength::constant(1.0), 0.2);
  CHECK(classic.regime == Regime::DefectorDominance);

  const RegimeReport edge = classify_regime(InteractionStrength::constant(1.0 / 1.2), 0.2);
  CHECK(edge.regime == Regime::CriticalLower);
  CHECK(stabilities(edge) == std::vector{Stability::Stable, Stability::Unstable});
}

TEST_CASE("critical linear strengths") {
  const RegimeReport lower = classify_regime(InteractionStrength::linear(1.0 / 1.2), 0.2);
  CHECK(lower.regime == Regime::CriticalLower);
  // x2 merges into x = 1, which attracts from below only algebraically.
  REQUIRE(lower.fixed_points.size() == 3);
  CHECK(lower.fixed_points[1].location == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(stabilities(lower) ==
        std::vector{Stability::Stable, Stability::Unstable, Stability::Stable});

  const RegimeReport upper = classify_regime(InteractionStrength::linear(1.5), 0.2);
  CHECK(upper.regime == Regime::CriticalUpper);
  CHECK(stabilities(upper) ==
        std::vector{Stability::Stable, Stability::SemiStable, Stability::Unstable});
}

TEST_CASE("property: regime partition and stable counts") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> rs(0.01, 0.99);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double r = rs(rng);
    const Thresholds t = critical_thresholds(r);
    const double k = 0.01 + 2.0 * t.k2 * frac(rng);
    const RegimeReport report = classify_regime(InteractionStrength::linear(k), r);
    if (is_critical(report.regime)) continue;
    switch (report.regime) {
      case Regime::Bistable:
        CHECK(k < t.k1);
        CHECK(stable_count(report) == 2);
        CHECK(report.fixed_points.back().stability == Stability::Stable);
        break;
      case Regime::Coexistence:
        CHECK(k > t.k1);
        CHECK(k < t.k2);
        REQUIRE(report.fixed_points.size() == 4);
        CHECK(stable_count(report) == 2);
        CHECK(report.fixed_points[2].stability == Stability::Stable);
        break;
      default:
        CHECK(k > t.k2);
        CHECK(stable_count(report) == 1);
        CHECK(report.fixed_points.size() == 2);
        break;
    }
    CHECK(report.fixed_points.front().stability == Stability::Stable);
    for (std::size_t i = 1; i < report.fixed_points.size(); ++i) {
      CHECK(report.fixed_points[i].location > report.fixed_points[i - 1].location + 1e-9);
    }
  }
}

TEST_CASE("property: flow direction around the separatrix in the bistable regime") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> rs(0.05, 0.95);
  std::uniform_real_distribution<double> frac(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double r = rs(rng);
    const double k = critical_thresholds(r).k1 * frac(rng);
    const double x1 = internal_fixed_points_linear(k, r).front();
    const auto m = linear_model(r, k);
    for (int i = 1; i < 200; ++i) {
      const double below = x1 * i / 200.0;
      const double above = x1 + (1.0 - x1) * i / 200.0;
      CHECK(m.replicator_velocity(below) < 0.0);
      CHECK(m.replicator_velocity(above) > 0.0);
    }
  }
}

TEST_CASE("bifurcation sweep") {
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const auto rows = bifurcation_sweep(0.2, grid, StrengthKind::LinearInFrequency);
  REQUIRE(rows.size() == 3);
  CHECK(*rows[0].regime == Regime::Bistable);
  CHECK(*rows[1].regime == Regime::Coexistence);
  CHECK(*rows[2].regime == Regime::DefectorDominance);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto report = classify_regime(InteractionStrength::linear(grid[i]), 0.2);
    CHECK(rows[i].fixed_points == report.fixed_points);
  }

  const std::vector<double> at_k1{critical_thresholds(0.2).k1};
  CHECK(is_critical(*bifurcation_sweep(0.2, at_k1, StrengthKind::LinearInFrequency)[0].regime));

  const std::vector<double> p{0.9};
  const auto constant_rows = bifurcation_sweep(0.2, p, StrengthKind::Constant);
  REQUIRE(constant_rows.size() == 1);
  CHECK(constant_rows[0].fixed_points.size() == 2);

  const std::vector<double> mixed{-1.0, 0.5, 1.5};
  const auto with_errors = bifurcation_sweep(0.2, mixed, StrengthKind::Constant);
  REQUIRE(with_errors.size() == 3);
  CHECK_FALSE(with_errors[0].regime.has_value());
  CHECK_FALSE(with_errors[0].error.empty());
  CHECK(with_errors[1].regime.has_value());
  CHECK_FALSE(with_errors[2].regime.has_value());
}

TEST_CASE("linear grid") {
  const auto g = linear_grid(0.1, 2.0, 100);
  CHECK(g.size() == 100);
  CHECK(g.front() == 0.1);
  CHECK(g.back() == 2.0);
  CHECK(linear_grid(3.0, 4.0, 1) == std::vector<double>{3.0});
  CHECK_THROWS_AS(linear_grid(0, 1, 0), std::invalid_argument);
}

TEST_CASE("label round trip") {
  for (auto s : {Stability::Stable, Stability::Unstable, Stability::SemiStable}) {
    CHECK(parse_stability(to_string(s)) == s);
  }
  for (auto r : {Regime::Bistable, Regime::Coexistence, Regime::DefectorDominance,
                 Regime::CriticalLower, Regime::CriticalUpper}) {
    CHECK(parse_regime(to_string(r)) == r);
  }
  CHECK_THROWS_AS(parse_regime("Chaos"), std::invalid_argument);
}

}  // TEST_SUITE
