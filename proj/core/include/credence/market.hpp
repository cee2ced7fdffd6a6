#pragma once

#include <string_view>

#include "credence/params.hpp"
#include "credence/rng.hpp"

namespace credence {

enum class MarkupClass { HQTFavored, LQTFavored, Equal };
enum class Problem { Big, Small };
enum class Treatment { HQT, LQT };
enum class Ability { High, Low };
enum class IncomeMode { TransparentHigh, TransparentLow, Obfuscated };
enum class OutcomeClass { A_undertreated, B_highpaid, C_efficient_small };

std::string_view to_string(MarkupClass value);
std::string_view to_string(Problem value);
std::string_view to_string(Treatment value);
std::string_view to_string(Ability value);
std::string_view to_string(IncomeMode value);
std::string_view to_string(OutcomeClass value);

struct PriceVector {
  MenuKind kind = MenuKind::Pm;
  double p_hi = 0.0;
  double p_lo = 0.0;
  double invested_markup = 0.0;  // equals d when the expert invested, zero otherwise

  double price(Treatment t) const { return t == Treatment::HQT ? p_hi : p_lo; }
  double spread() const { return p_hi - p_lo; }
};

// Menu as posted to consumers. Investing adds d to both prices.
PriceVector price_vector(MenuKind kind, const MarketParams& params, bool invested = false);

MarkupClass markup_class(const PriceVector& pv, const MarketParams& params);

struct ExpertIdentity {
  Ability ability = Ability::Low;
  bool invested = false;

  // Own precision, replaced by k_inv when the improved diagnosis is active.
  double precision(const MarketParams& params, bool improved_diagnosis_active) const;
};

// Expected income of an honest expert with precision k facing spread dp and HQT price p_hi.
double honest_income(double k, double p_hi, double dp, const MarketParams& params);
// Precision a consumer expects from an obfuscated expert when believing Pr(H) = belief_high.
double mixture_precision(double belief_high, const MarketParams& params);

class IncomeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Closed-form expected consumer income of a menu. Obfuscated uses the prior gamma.
// Throws IncomeError for Obfuscated together with invested (investors are homogeneous).
double expected_consumer_income(MenuKind kind, IncomeMode mode, bool invested, const MarketParams& params);

Treatment self_interested_treatment(const PriceVector& pv, Problem signal, const MarketParams& params);

Problem draw_problem(const MarketParams& params, Rng& rng);
Problem draw_diagnosis(Problem problem, double precision, Rng& rng);

struct RoundOutcome {
  Problem problem = Problem::Small;
  Problem signal = Problem::Small;
  Treatment treatment = Treatment::LQT;
  bool solved = false;
  double price_charged = 0.0;
  double consumer_payoff = 0.0;
  double expert_profit = 0.0;
  OutcomeClass outcome_class = OutcomeClass::C_efficient_small;
};

OutcomeClass classify(Problem problem, Treatment treatment);
bool is_efficient(Problem problem, Treatment treatment);

// Payoffs of one treated consumer. The fee d is deducted from the expert when invested;
// pv is expected to already carry the matching markup.
RoundOutcome realize_round(Problem problem, Treatment treatment, const PriceVector& pv, bool invested,
                           const MarketParams& params);

}  // namespace credence
