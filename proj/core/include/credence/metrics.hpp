#pragma once

#include <array>
#include <string>
#include <vector>

#include "credence/abm.hpp"

namespace credence {

struct Metrics {
  std::size_t consumer_rounds = 0;
  std::size_t treatments = 0;
  double market_entry_rate = 0.0;
  // (mean realised surplus per consumer-round - sigma) / (mean first-best surplus - sigma),
  // where a consumer-round's first best is max(sigma, v - cost of the efficient treatment).
  double efficiency = 0.0;
  double relative_efficiency = 0.0;  // same, with investment fees added back
  double undertreatment = 0.0;       // shares of all treatments
  double overtreatment = 0.0;
  double efficient_treatment = 0.0;
  double efficient_provision = 0.0;  // correct signal and efficient treatment
  double expert_surplus = 0.0;       // weighted payoff total per expert
  double consumer_surplus = 0.0;     // weighted payoff total per consumer
  std::array<double, 3> price_vector_shares{};  // Pm, Pe, Ps over expert-rounds
  double investment_share_high = 0.0;           // phase-2 expert-rounds
  double investment_share_low = 0.0;
  double phase2_share_high = 0.0;               // HA's share of phase-2 consumer-rounds
};

Metrics compute_metrics(const RunLog& log, const MarketParams& params);
Metrics compute_metrics(const std::vector<RunLog>& logs, const MarketParams& params);

std::string metrics_to_json(const Metrics& m, int indent = 2);

// Largest violation of consumer payoff + expert profit = v*solved - cost - d*invested.
double accounting_residual(const RunLog& log, const MarketParams& params);
// Records where the charged price differs from the posted price of the implemented treatment.
std::size_t verifiability_violations(const RunLog& log);

}  // namespace credence
