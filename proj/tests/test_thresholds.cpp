#include "doctest.h"

#include <cmath>

#include "credence/market.hpp"
#include "credence/thresholds.hpp"

using namespace credence;

TEST_CASE("price thresholds") {
  const MarketParams p = default_params();
  const ThresholdSet obf = price_thresholds(p, IncomeMode::Obfuscated);
  REQUIRE(obf.h_m);
  CHECK(std::abs(*obf.h_m - 0.337) <= 0.005);
  CHECK(std::abs(*obf.h_m - 0.34) <= 0.005);
  REQUIRE(obf.h_s);
  CHECK(*obf.h_s == doctest::Approx(0.206).epsilon(0.001));
  const ThresholdSet low = price_thresholds(p, IncomeMode::TransparentLow);
  REQUIRE(low.h_m);
  CHECK(*low.h_m == doctest::Approx(4.0 / 15.0));
}

TEST_CASE("h_m is where the equal-markup and HQT-favoring incomes cross") {
  const MarketParams p = default_params();
  const double h_m = *price_thresholds(p, IncomeMode::Obfuscated).h_m;
  double lo = 0.21;
  double hi = 0.9;
  auto gap = [&](double h) {
    MarketParams q = p;
    q.h = h;
    return expected_consumer_income(MenuKind::Pe, IncomeMode::Obfuscated, false, q) -
           expected_consumer_income(MenuKind::Pm, IncomeMode::Obfuscated, false, q);
  };
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0 ? lo : hi) = mid;
  }
  CHECK(h_m == doctest::Approx(lo).epsilon(1e-9));
}

TEST_CASE("belief bounds") {
  const MarketParams p = default_params();
  const BeliefBounds b = belief_bounds(p);
  REQUIRE(b.gamma_m);
  CHECK(*b.gamma_m == doctest::Approx(10.0 / 17.0));
  CHECK(std::abs(*b.gamma_m - 0.59) <= 0.005);
  REQUIRE(b.gamma_s);
  CHECK(*b.gamma_s == doctest::Approx(-10.0 / 17.0));
  MarketParams degenerate = p;
  degenerate.z = degenerate.q;
  CHECK_FALSE(belief_bounds(degenerate).gamma_m.has_value());
}

TEST_CASE("obfuscated regions") {
  const MarketParams p = default_params();
  CHECK(prop1_region(0.4, p) == MenuKind::Pm);
  CHECK(prop1_region(0.30, p) == MenuKind::Pe);
  CHECK(prop1_region(0.10, p) == MenuKind::Ps);
}

TEST_CASE("region rule agrees with the income argmax on a fine grid" * doctest::test_suite("consistency")) {
  const MarketParams p = default_params();
  const ThresholdSet t = price_thresholds(p, IncomeMode::Obfuscated);
  for (int i = 1; i < 1000; ++i) {
    const double h = i / 1000.0;
    MarketParams q = p;
    q.h = h;
    const double pm = expected_consumer_income(MenuKind::Pm, IncomeMode::Obfuscated, false, q);
    const double ps = expected_consumer_income(MenuKind::Ps, IncomeMode::Obfuscated, false, q);
    const double pe = expected_consumer_income(MenuKind::Pe, IncomeMode::Obfuscated, false, q);
    const bool near_boundary = std::abs(h - *t.h_m) < 1e-9 || std::abs(h - *t.h_s) < 1e-9;
    if (near_boundary) continue;
    MenuKind best = MenuKind::Pe;
    if (pm > pe && pm >= ps) best = MenuKind::Pm;
    if (ps > pe && ps > pm) best = MenuKind::Ps;
    CAPTURE(h);
    CHECK(prop1_region(h, p) == best);
  }
}

TEST_CASE("region scan") {
  const MarketParams p = default_params();
  const auto rows = emit_region_scan(p, {p.gamma}, {0.4});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].region == MenuKind::Pm);
  CHECK(rows[0].incomes.pi_m == doctest::Approx(50.0));
  const auto low = emit_region_scan(p, {p.gamma}, {0.01, 0.05, 0.1, 0.15, 0.2});
  for (const auto& r : low) CHECK(r.region == MenuKind::Ps);
  const auto two = emit_region_scan(p, {1.0, 0.0}, {0.1, 0.2, 0.3});
  REQUIRE(two.size() == 6);
  CHECK(two[0].gamma == 1.0);
  CHECK(two[3].gamma == 0.0);
  CHECK(two[4].h == doctest::Approx(0.2));
}

TEST_CASE("regime incomes cross at h_m for the prior belief") {
  const MarketParams p = default_params();
  const double h_m = *price_thresholds(p, IncomeMode::Obfuscated).h_m;
  const RegimeIncomes at = regime_incomes(h_m, p.gamma, p);
  CHECK(at.pi_e == doctest::Approx(at.pi_m).epsilon(1e-9));
}

TEST_CASE("investment income curves follow the quoted formulas") {
  const MarketParams p = default_params();
  CHECK(transparent_high_income(p) == doctest::Approx(57.0));
  CHECK(transparent_low_income(p) == doctest::Approx(40.0));
  auto quoted_inv = [](double w, double g) { return (1 - w) * 57 + w * (30 + g * 17); };
  auto quoted_ninv = [](double g) { return 40 + 17 * g; };
  for (double w : {0.0, 0.25, 0.5, 1.0}) {
    for (double g : {0.0, 1.0 / 3.0, 0.7, 1.0}) {
      const InvestIncomes c = invest_income_curves(w, g, p);
      CHECK(c.pi_alg_inv == doctest::Approx(quoted_inv(w, g)));
      CHECK(c.pi_alg_ninv == doctest::Approx(quoted_ninv(g)));
    }
  }
  const InvestIncomes c = invest_income_curves(1.0, 0.0, p);
  CHECK(c.pi_alg_inv == doctest::Approx(30.0));
  CHECK(c.pi_alg_ninv == doctest::Approx(40.0));
  const InvestIncomes mid = invest_income_curves(0.5, 1.0 / 3.0, p);
  CHECK(mid.pi_alg_inv == doctest::Approx(46.0 + 1.0 / 3.0));
  CHECK(mid.pi_alg_ninv == doctest::Approx(45.0 + 2.0 / 3.0));
}

TEST_CASE("signaling thresholds") {
  const MarketParams p = default_params();
  const SignalingThresholds s0 = signaling_thresholds(p, 0.0, 0.0);
  REQUIRE(s0.w_ninv);
  CHECK(*s0.w_ninv == doctest::Approx(17.0 / 27.0));
  const SignalingThresholds s1 = signaling_thresholds(p, 1.0, 0.0);
  REQUIRE(s1.w_ninv);
  CHECK(*s1.w_ninv == doctest::Approx(0.0));
  // Belief threshold at w quoted as (17 - 27w) / (17 (1 + w)).
  const SignalingThresholds sw = signaling_thresholds(p, 0.2, 0.3);
  REQUIRE(sw.gamma_ninv);
  CHECK(*sw.gamma_ninv == doctest::Approx((17 - 27 * 0.3) / (17 * 1.3)));
}

TEST_CASE("retention bound") {
  const MarketParams p = default_params();
  auto quoted = [](double w, double g) { return 30 * (w * (17 * g - 27) + 17 * g) / (-17 * (1 - g)); };
  REQUIRE(r_bar(0.5, 0.1, p));
  CHECK(*r_bar(0.5, 0.1, p) == doctest::Approx(21.47).epsilon(0.001));
  CHECK(*r_bar(0.0, 0.2, p) == doctest::Approx(-7.5));
  CHECK(*r_bar(0.0, 0.0, p) == doctest::Approx(0.0));
  for (double w : {0.0, 0.3, 0.8}) {
    for (double g : {0.0, 0.2, 0.6, 0.9}) CHECK(*r_bar(w, g, p) == doctest::Approx(quoted(w, g)));
  }
  CHECK_FALSE(r_bar(0.5, 1.0, p).has_value());
}

TEST_CASE("retention contour flags") {
  const MarketParams p = default_params();
  const auto cells = emit_rbar_contour(p, {0.0, 0.5}, {0.0, 0.1, 0.2});
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].w == 0.0);
  CHECK(cells[0].feasible);
  CHECK(cells[2].clamped);
  CHECK_FALSE(cells[2].feasible);
  CHECK(cells[4].gamma == doctest::Approx(0.1));
  CHECK_FALSE(cells[4].feasible);
  CHECK_FALSE(cells[4].clamped);
}

TEST_CASE("all-invest uncertainty bound") {
  const auto w = all_invest_w_threshold(experiment2_params(), 10.0);
  REQUIRE(w);
  CHECK(std::abs(*w - 0.48) <= 0.01);
}

TEST_CASE("linspace") {
  const auto xs = linspace(0.0, 1.0, 5);
  REQUIRE(xs.size() == 5);
  CHECK(xs[1] == doctest::Approx(0.25));
  CHECK(xs.back() == 1.0);
  CHECK(linspace(0.0, 1.0, 1).size() == 1);
  CHECK(linspace(0.0, 1.0, 0).empty());
}

TEST_CASE("region rule agrees with the common-spread regime comparison") {
  const MarketParams p = default_params();
  for (int i = 1; i < 1000; ++i) {
    const double h = i / 1000.0;
    const RegimeIncomes r = regime_incomes(h, p.gamma, p);
    MenuKind best = MenuKind::Pe;
    if (r.pi_m > r.pi_e && r.pi_m >= r.pi_s) best = MenuKind::Pm;
    if (r.pi_s > r.pi_e && r.pi_s > r.pi_m) best = MenuKind::Ps;
    CAPTURE(h);
    CHECK(prop1_region(h, p) == best);
  }
}

TEST_CASE("retention bound rises with the uncertainty about aid use") {
  const MarketParams p = default_params();
  for (double g : {0.0, 0.1, 0.3, 0.6, 0.9}) {
    for (int i = 1; i <= 100; ++i) CHECK(*r_bar(i / 100.0, g, p) >= *r_bar((i - 1) / 100.0, g, p));
  }
}
