#include "credence/market.hpp"

namespace credence {

std::string_view to_string(MarkupClass value) {
  switch (value) {
    case MarkupClass::HQTFavored: return "HQTFavored";
    case MarkupClass::LQTFavored: return "LQTFavored";
    case MarkupClass::Equal: return "Equal";
  }
  return "?";
}

std::string_view to_string(Problem value) { return value == Problem::Big ? "Big" : "Small"; }
std::string_view to_string(Treatment value) { return value == Treatment::HQT ? "HQT" : "LQT"; }
std::string_view to_string(Ability value) { return value == Ability::High ? "High" : "Low"; }

std::string_view to_string(IncomeMode value) {
  switch (value) {
    case IncomeMode::TransparentHigh: return "TransparentHigh";
    case IncomeMode::TransparentLow: return "TransparentLow";
    case IncomeMode::Obfuscated: return "Obfuscated";
  }
  return "?";
}

std::string_view to_string(OutcomeClass value) {
  switch (value) {
    case OutcomeClass::A_undertreated: return "A";
    case OutcomeClass::B_highpaid: return "B";
    case OutcomeClass::C_efficient_small: return "C";
  }
  return "?";
}

PriceVector price_vector(MenuKind kind, const MarketParams& params, bool invested) {
  double markup = invested ? params.d : 0.0;
  return PriceVector{kind, params.p_hi + markup, params.p_lo(kind) + markup, markup};
}

MarkupClass markup_class(const PriceVector& pv, const MarketParams& params) {
  double hi = pv.p_hi - params.c_hi;
  double lo = pv.p_lo - params.c_lo;
  if (hi > lo) return MarkupClass::HQTFavored;
  if (hi < lo) return MarkupClass::LQTFavored;
  return MarkupClass::Equal;
}

double ExpertIdentity::precision(const MarketParams& params, bool improved_diagnosis_active) const {
  if (invested && improved_diagnosis_active) return params.k_inv;
  return ability == Ability::High ? params.z : params.q;
}

double honest_income(double k, double p_hi, double dp, const MarketParams& params) {
  const double h = params.h;
  return (1.0 - h + h * k) * params.v - p_hi + (h + k - 2.0 * h * k) * dp;
}

double mixture_precision(double belief_high, const MarketParams& params) {
  return belief_high * params.z + (1.0 - belief_high) * params.q;
}

double expected_consumer_income(MenuKind kind, IncomeMode mode, bool invested, const MarketParams& params) {
  if (mode == IncomeMode::Obfuscated && invested) {
    throw IncomeError("obfuscated income is undefined for investing experts: their precision is k_inv");
  }
  PriceVector pv = price_vector(kind, params, invested);
  switch (markup_class(pv, params)) {
    case MarkupClass::HQTFavored: return params.v - pv.p_hi;
    case MarkupClass::LQTFavored: return (1.0 - params.h) * params.v - pv.p_lo;
    case MarkupClass::Equal: break;
  }
  double k = 0.0;
  if (invested) {
    k = params.k_inv;
  } else if (mode == IncomeMode::TransparentHigh) {
    k = params.z;
  } else if (mode == IncomeMode::TransparentLow) {
    k = params.q;
  } else {
    k = mixture_precision(params.gamma, params);
  }
  return honest_income(k, pv.p_hi, pv.spread(), params);
}

Treatment self_interested_treatment(const PriceVector& pv, Problem signal, const MarketParams& params) {
  switch (markup_class(pv, params)) {
    case MarkupClass::HQTFavored: return Treatment::HQT;
    case MarkupClass::LQTFavored: return Treatment::LQT;
    case MarkupClass::Equal: break;
  }
  return signal == Problem::Big ? Treatment::HQT : Treatment::LQT;
}

Problem draw_problem(const MarketParams& params, Rng& rng) {
  return bernoulli(rng, params.h) ? Problem::Big : Problem::Small;
}

Problem draw_diagnosis(Problem problem, double precision, Rng& rng) {
  if (bernoulli(rng, precision)) return problem;
  return problem == Problem::Big ? Problem::Small : Problem::Big;
}

OutcomeClass classify(Problem problem, Treatment treatment) {
  if (treatment == Treatment::HQT) return OutcomeClass::B_highpaid;
  return problem == Problem::Big ? OutcomeClass::A_undertreated : OutcomeClass::C_efficient_small;
}

bool is_efficient(Problem problem, Treatment treatment) {
  return (problem == Problem::Big) == (treatment == Treatment::HQT);
}

RoundOutcome realize_round(Problem problem, Treatment treatment, const PriceVector& pv, bool invested,
                           const MarketParams& params) {
  RoundOutcome out;
  out.problem = problem;
  out.signal = problem;
  out.treatment = treatment;
  out.solved = treatment == Treatment::HQT || problem == Problem::Small;
  out.price_charged = pv.price(treatment);
  double cost = treatment == Treatment::HQT ? params.c_hi : params.c_lo;
  out.consumer_payoff = (out.solved ? params.v : 0.0) - out.price_charged;
  out.expert_profit = out.price_charged - cost - (invested ? params.d : 0.0);
  out.outcome_class = classify(problem, treatment);
  return out;
}

}  // namespace credence
