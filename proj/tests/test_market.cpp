#include "doctest.h"

#include <cmath>

#include "credence/market.hpp"
#include "credence/rng.hpp"

using namespace credence;

namespace {

// Direct enumeration of the four (problem, signal) cells of an honest equal-markup expert.
double enumerate_honest(double h, double k, double v, double p_hi, double p_lo) {
  const double big_ok = h * k;           // HQT, solved
  const double big_miss = h * (1 - k);   // LQT, unsolved
  const double small_miss = (1 - h) * (1 - k);  // HQT, solved
  const double small_ok = (1 - h) * k;   // LQT, solved
  return big_ok * (v - p_hi) + big_miss * (-p_lo) + small_miss * (v - p_hi) + small_ok * (v - p_lo);
}

}  // namespace

TEST_CASE("markup classes of the three menus") {
  const MarketParams p = default_params();
  CHECK(markup_class(price_vector(MenuKind::Pm, p), p) == MarkupClass::HQTFavored);
  CHECK(markup_class(price_vector(MenuKind::Pe, p), p) == MarkupClass::Equal);
  CHECK(markup_class(price_vector(MenuKind::Ps, p), p) == MarkupClass::LQTFavored);
  CHECK(markup_class(price_vector(MenuKind::Pe, p, true), p) == MarkupClass::Equal);
}

TEST_CASE("investing adds the fee to both prices") {
  const MarketParams p = default_params();
  const PriceVector pv = price_vector(MenuKind::Pe, p, true);
  CHECK(pv.p_hi == 110.0);
  CHECK(pv.p_lo == 70.0);
  CHECK(pv.spread() == 40.0);
}

TEST_CASE("closed-form consumer incomes") {
  const MarketParams p = default_params();
  for (IncomeMode mode : {IncomeMode::TransparentHigh, IncomeMode::TransparentLow, IncomeMode::Obfuscated}) {
    CHECK(expected_consumer_income(MenuKind::Pm, mode, false, p) == doctest::Approx(50.0));
    CHECK(expected_consumer_income(MenuKind::Ps, mode, false, p) == doctest::Approx(10.0));
  }
  CHECK(expected_consumer_income(MenuKind::Pe, IncomeMode::Obfuscated, false, p) == doctest::Approx(45.67).epsilon(0.0003));
  CHECK(expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentLow, false, p) == doctest::Approx(40.0));
  CHECK(expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentHigh, false, p) == doctest::Approx(57.0));
  CHECK(expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentHigh, true, p) == doctest::Approx(57.2));
  CHECK_THROWS_AS(expected_consumer_income(MenuKind::Pe, IncomeMode::Obfuscated, true, p), IncomeError);
}

TEST_CASE("honest income matches cell enumeration") {
  const MarketParams p = default_params();
  for (double k : {0.5, 0.6, 0.75, 0.9, 1.0}) {
    CHECK(honest_income(k, 100.0, 40.0, p) == doctest::Approx(enumerate_honest(0.4, k, 150.0, 100.0, 60.0)));
  }
  CHECK(honest_income(0.9, 110.0, 40.0, p) == doctest::Approx(enumerate_honest(0.4, 0.9, 150.0, 110.0, 70.0)));
}

TEST_CASE("mixture precision") {
  const MarketParams p = default_params();
  CHECK(mixture_precision(1.0, p) == doctest::Approx(0.75));
  CHECK(mixture_precision(0.0, p) == doctest::Approx(0.5));
  CHECK(mixture_precision(1.0 / 3.0, p) == doctest::Approx(7.0 / 12.0));
}

TEST_CASE("self-interested treatment follows the dominant markup") {
  const MarketParams p = default_params();
  CHECK(self_interested_treatment(price_vector(MenuKind::Pm, p), Problem::Small, p) == Treatment::HQT);
  CHECK(self_interested_treatment(price_vector(MenuKind::Ps, p), Problem::Big, p) == Treatment::LQT);
  CHECK(self_interested_treatment(price_vector(MenuKind::Pe, p), Problem::Big, p) == Treatment::HQT);
  CHECK(self_interested_treatment(price_vector(MenuKind::Pe, p), Problem::Small, p) == Treatment::LQT);
}

TEST_CASE("diagnosis accuracy") {
  Rng rng = substream(11, {1});
  for (int i = 0; i < 1000; ++i) CHECK(draw_diagnosis(Problem::Big, 1.0, rng) == Problem::Big);
  for (double k : {0.5, 0.9}) {
    int correct = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const Problem pr = i % 2 ? Problem::Big : Problem::Small;
      correct += draw_diagnosis(pr, k, rng) == pr;
    }
    CHECK(std::abs(static_cast<double>(correct) / n - k) < 0.01);
  }
}

TEST_CASE("round payoffs") {
  const MarketParams p = default_params();
  const RoundOutcome a = realize_round(Problem::Big, Treatment::LQT, price_vector(MenuKind::Ps, p), false, p);
  CHECK(a.consumer_payoff == -80.0);
  CHECK(a.expert_profit == 60.0);
  CHECK(a.outcome_class == OutcomeClass::A_undertreated);
  CHECK_FALSE(a.solved);
  const RoundOutcome c = realize_round(Problem::Small, Treatment::LQT, price_vector(MenuKind::Pe, p), false, p);
  CHECK(c.consumer_payoff == 90.0);
  CHECK(c.expert_profit == 40.0);
  CHECK(c.outcome_class == OutcomeClass::C_efficient_small);
  const RoundOutcome b = realize_round(Problem::Small, Treatment::HQT, price_vector(MenuKind::Pm, p), false, p);
  CHECK(b.consumer_payoff == 50.0);
  CHECK(b.expert_profit == 40.0);
  CHECK(b.outcome_class == OutcomeClass::B_highpaid);
  const RoundOutcome inv = realize_round(Problem::Big, Treatment::HQT, price_vector(MenuKind::Pe, p, true), true, p);
  CHECK(inv.consumer_payoff == 40.0);
  CHECK(inv.expert_profit == 110.0 - 60.0 - 10.0);
}

TEST_CASE("efficiency classification") {
  CHECK(is_efficient(Problem::Big, Treatment::HQT));
  CHECK(is_efficient(Problem::Small, Treatment::LQT));
  CHECK_FALSE(is_efficient(Problem::Small, Treatment::HQT));
  CHECK_FALSE(is_efficient(Problem::Big, Treatment::LQT));
  CHECK(classify(Problem::Big, Treatment::HQT) == OutcomeClass::B_highpaid);
}
