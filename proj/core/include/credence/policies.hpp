#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "credence/market.hpp"
#include "credence/params.hpp"
#include "credence/rng.hpp"

namespace credence {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExpertPolicyKind {
  HonestEqualMarkup,
  SelfInterested,
  PmAlwaysHQT,
  PsUndertreater,
  HASignaler,
  LAImitator,
  OneShotRandomizer,
  AlwaysInvest,
  NeverInvest
};

enum class ConsumerPolicyKind { Greedy, BayesianSwitcher, SafeSeeker, OutsideOptionSitter };

// Strategic policies (signaler, imitator, randomizer, investors) play the phase-1 pooling
// strategy, Pm with the HQT always, and switch to their own rule in phase 2.
struct ExpertPolicy {
  ExpertPolicyKind kind = ExpertPolicyKind::HonestEqualMarkup;
  MenuKind menu = MenuKind::Pe;  // SelfInterested only
  double r_switch = 5.0;         // LAImitator: phase-2 round from which it plays Pm with the HQT
  double invest_prob = 0.5;      // OneShotRandomizer
  double use_aid_prob = 1.0;     // Algorithm mode: chance an investor consults the aid
};

struct ExpertContext {
  bool phase2 = false;
  int phase2_round = 0;  // 0-based within phase 2
  Ability ability = Ability::Low;
};

struct ConsumerPolicy {
  ConsumerPolicyKind kind = ConsumerPolicyKind::Greedy;
  double threshold = 0.9;                // BayesianSwitcher: Pr(L) at which the current expert is dropped
  bool low_model_always_hqt = false;     // L hypothesis is an always-HQT imitator rather than honest
};

MenuKind price_rule(const ExpertPolicy& policy, const ExpertContext& ctx);
bool invest_rule(const ExpertPolicy& policy, const ExpertContext& ctx, Rng& rng);
Treatment treat_rule(const ExpertPolicy& policy, const ExpertContext& ctx, const PriceVector& pv, Problem signal,
                     const MarketParams& params);
bool use_aid_rule(const ExpertPolicy& policy, const ExpertContext& ctx, Rng& rng);

struct PolicyInfo {
  std::string name;
  std::string kind;  // "expert" or "consumer"
  std::string parameter;
  std::string description;
};

std::vector<PolicyInfo> builtin_policies();

// Parses identifiers such as "HASignaler", "LAImitator(5)", "SelfInterested(Pm)",
// "BayesianSwitcher(0.9)". Unknown names throw ConfigError.
ExpertPolicy expert_policy_from_string(std::string_view text);
ConsumerPolicy consumer_policy_from_string(std::string_view text);
std::string to_string(const ExpertPolicy& policy);
std::string to_string(const ConsumerPolicy& policy);

}  // namespace credence
