#include "credence/metrics.hpp"

#include <cmath>
#include <map>

#include "json.hpp"

namespace credence {

namespace {

struct Tally {
  double n = 0, entered = 0, actual = 0, actual_gross = 0, best = 0;
  double treatments = 0, under = 0, over = 0, efficient = 0, provision = 0;
  double expert_pay = 0, consumer_pay = 0;
  std::array<double, 3> menus{};
  double expert_rounds = 0;
  double inv_high = 0, rounds_high = 0, inv_low = 0, rounds_low = 0;
  double p2_rounds = 0, p2_high = 0;

  void add(const RunLog& log, const MarketParams& params) {
    for (const ExpertRecord& r : log.experts) {
      ++expert_rounds;
      menus[static_cast<std::size_t>(r.menu)] += 1.0;
      if (r.phase2) {
        if (r.ability == Ability::High) {
          ++rounds_high;
          inv_high += r.invested;
        } else {
          ++rounds_low;
          inv_low += r.invested;
        }
      }
    }
    for (const ConsumerRecord& r : log.consumers) {
      ++n;
      const double first_best =
          std::max(params.sigma, params.v - (r.problem == Problem::Big ? params.c_hi : params.c_lo));
      best += first_best;
      if (r.phase2) ++p2_rounds;
      if (r.expert < 0) {
        actual += params.sigma;
        actual_gross += params.sigma;
        consumer_pay += r.weight * params.sigma;
        continue;
      }
      ++entered;
      if (r.phase2 && r.expert == 0) ++p2_high;
      const double surplus = r.consumer_payoff + r.expert_profit;
      actual += surplus;
      actual_gross += surplus + (r.invested ? params.d : 0.0);
      consumer_pay += r.weight * r.consumer_payoff;
      expert_pay += r.weight * r.expert_profit;
      ++treatments;
      const bool eff = is_efficient(r.problem, r.treatment);
      if (r.problem == Problem::Big && r.treatment == Treatment::LQT) ++under;
      if (r.problem == Problem::Small && r.treatment == Treatment::HQT) ++over;
      if (eff) ++efficient;
      if (eff && r.signal == r.problem) ++provision;
    }
  }

  Metrics finish(const MarketParams& params) const {
    Metrics m;
    auto share = [](double a, double b) { return b > 0 ? a / b : 0.0; };
    m.consumer_rounds = static_cast<std::size_t>(n);
    m.treatments = static_cast<std::size_t>(treatments);
    m.market_entry_rate = share(entered, n);
    if (n > 0) {
      const double denom = best / n - params.sigma;
      m.efficiency = denom != 0.0 ? (actual / n - params.sigma) / denom : 0.0;
      m.relative_efficiency = denom != 0.0 ? (actual_gross / n - params.sigma) / denom : 0.0;
    }
    m.undertreatment = share(under, treatments);
    m.overtreatment = share(over, treatments);
    m.efficient_treatment = share(efficient, treatments);
    m.efficient_provision = share(provision, treatments);
    m.expert_surplus = expert_pay / 3.0;
    m.consumer_surplus = consumer_pay / 3.0;
    for (std::size_t k = 0; k < 3; ++k) m.price_vector_shares[k] = share(menus[k], expert_rounds);
    m.investment_share_high = share(inv_high, rounds_high);
    m.investment_share_low = share(inv_low, rounds_low);
    m.phase2_share_high = share(p2_high, p2_rounds);
    return m;
  }
};

}  // namespace

Metrics compute_metrics(const RunLog& log, const MarketParams& params) {
  Tally t;
  t.add(log, params);
  return t.finish(params);
}

Metrics compute_metrics(const std::vector<RunLog>& logs, const MarketParams& params) {
  Tally t;
  for (const RunLog& log : logs) t.add(log, params);
  Metrics m = t.finish(params);
  if (!logs.empty()) {
    m.expert_surplus /= static_cast<double>(logs.size());
    m.consumer_surplus /= static_cast<double>(logs.size());
  }
  return m;
}

std::string metrics_to_json(const Metrics& m, int indent) {
  nlohmann::ordered_json j{{"consumer_rounds", m.consumer_rounds},
                           {"treatments", m.treatments},
                           {"market_entry_rate", m.market_entry_rate},
                           {"efficiency", m.efficiency},
                           {"relative_efficiency", m.relative_efficiency},
                           {"undertreatment", m.undertreatment},
                           {"overtreatment", m.overtreatment},
                           {"efficient_treatment", m.efficient_treatment},
                           {"efficient_provision", m.efficient_provision},
                           {"expert_surplus", m.expert_surplus},
                           {"consumer_surplus", m.consumer_surplus},
                           {"price_vector_shares",
                            {{"Pm", m.price_vector_shares[0]},
                             {"Pe", m.price_vector_shares[1]},
                             {"Ps", m.price_vector_shares[2]}}},
                           {"investment_shares", {{"High", m.investment_share_high}, {"Low", m.investment_share_low}}},
                           {"phase2_share_high", m.phase2_share_high}};
  return j.dump(indent);
}

double accounting_residual(const RunLog& log, const MarketParams& params) {
  double worst = 0.0;
  for (const ConsumerRecord& r : log.consumers) {
    if (r.expert < 0) continue;
    const double lhs = r.consumer_payoff + r.expert_profit;
    const double rhs = (r.solved ? params.v : 0.0) - r.cost - (r.invested ? params.d : 0.0);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::size_t verifiability_violations(const RunLog& log) {
  std::map<std::pair<int, int>, const ExpertRecord*> posted;
  for (const ExpertRecord& r : log.experts) posted[{r.round, r.expert}] = &r;
  std::size_t bad = 0;
  for (const ConsumerRecord& r : log.consumers) {
    if (r.expert < 0) continue;
    const auto it = posted.find({r.round, r.expert});
    if (it == posted.end()) {
      ++bad;
      continue;
    }
    const double expected = r.treatment == Treatment::HQT ? it->second->p_hi : it->second->p_lo;
    if (r.price != expected) ++bad;
  }
  return bad;
}

}  // namespace credence
