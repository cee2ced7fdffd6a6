#include "credence/policies.hpp"

#include <cstdio>

namespace credence {

namespace {

bool strategic(ExpertPolicyKind kind) {
  switch (kind) {
    case ExpertPolicyKind::HASignaler:
    case ExpertPolicyKind::LAImitator:
    case ExpertPolicyKind::OneShotRandomizer:
    case ExpertPolicyKind::AlwaysInvest:
    case ExpertPolicyKind::NeverInvest: return true;
    default: return false;
  }
}

struct Parsed {
  std::string name;
  std::string arg;
  bool has_arg = false;
};

Parsed split(std::string_view text) {
  Parsed p;
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    p.name = std::string(text);
    return p;
  }
  if (text.back() != ')') throw ConfigError("malformed policy: " + std::string(text));
  p.name = std::string(text.substr(0, open));
  p.arg = std::string(text.substr(open + 1, text.size() - open - 2));
  p.has_arg = true;
  return p;
}

double number(const Parsed& p, double fallback) {
  if (!p.has_arg) return fallback;
  try {
    std::size_t used = 0;
    const double value = std::stod(p.arg, &used);
    if (used != p.arg.size()) throw ConfigError("");
    return value;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric argument for " + p.name + ": " + p.arg);
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

MenuKind price_rule(const ExpertPolicy& policy, const ExpertContext& ctx) {
  if (strategic(policy.kind) && !ctx.phase2) return MenuKind::Pm;
  switch (policy.kind) {
    case ExpertPolicyKind::SelfInterested: return policy.menu;
    case ExpertPolicyKind::PmAlwaysHQT: return MenuKind::Pm;
    case ExpertPolicyKind::PsUndertreater: return MenuKind::Ps;
    case ExpertPolicyKind::LAImitator:
      return ctx.phase2_round < policy.r_switch ? MenuKind::Pe : MenuKind::Pm;
    default: return MenuKind::Pe;
  }
}

bool invest_rule(const ExpertPolicy& policy, const ExpertContext& ctx, Rng& rng) {
  if (!ctx.phase2) return false;
  switch (policy.kind) {
    case ExpertPolicyKind::AlwaysInvest: return true;
    case ExpertPolicyKind::OneShotRandomizer: return bernoulli(rng, policy.invest_prob);
    default: return false;
  }
}

Treatment treat_rule(const ExpertPolicy& policy, const ExpertContext& ctx, const PriceVector& pv, Problem signal,
                     const MarketParams& params) {
  if (strategic(policy.kind) && !ctx.phase2) return Treatment::HQT;
  switch (policy.kind) {
    case ExpertPolicyKind::SelfInterested: return self_interested_treatment(pv, signal, params);
    case ExpertPolicyKind::PmAlwaysHQT: return Treatment::HQT;
    case ExpertPolicyKind::PsUndertreater: return Treatment::LQT;
    case ExpertPolicyKind::LAImitator:
      if (ctx.phase2_round >= policy.r_switch) return Treatment::HQT;
      return signal == Problem::Big ? Treatment::HQT : Treatment::LQT;
    default: return signal == Problem::Big ? Treatment::HQT : Treatment::LQT;
  }
}

bool use_aid_rule(const ExpertPolicy& policy, const ExpertContext& ctx, Rng& rng) {
  if (!ctx.phase2) return false;
  return bernoulli(rng, policy.use_aid_prob);
}

std::vector<PolicyInfo> builtin_policies() {
  return {
      {"HonestEqualMarkup", "expert", "", "Pe menu, treats according to the signal, never invests"},
      {"SelfInterested", "expert", "menu", "posts the given menu and follows the dominant markup"},
      {"PmAlwaysHQT", "expert", "", "Pm menu, always the HQT"},
      {"PsUndertreater", "expert", "", "Ps menu, always the LQT"},
      {"HASignaler", "expert", "", "never invests, Pe menu, honest in phase 2"},
      {"LAImitator", "expert", "r_switch", "honest Pe imitation until phase-2 round r_switch, then Pm with the HQT"},
      {"OneShotRandomizer", "expert", "p", "invests with probability p each phase-2 round, Pe menu, honest"},
      {"AlwaysInvest", "expert", "", "invests in every phase-2 round, Pe menu, honest"},
      {"NeverInvest", "expert", "", "never invests, Pe menu, honest"},
      {"Greedy", "consumer", "", "visits an expert with the highest expected income when it is at least sigma"},
      {"BayesianSwitcher", "consumer", "threshold", "stays with its expert until Pr(L) reaches the threshold"},
      {"SafeSeeker", "consumer", "", "visits the unique investor when exactly one expert invests, greedy otherwise"},
      {"OutsideOptionSitter", "consumer", "", "always takes the outside option"},
  };
}

ExpertPolicy expert_policy_from_string(std::string_view text) {
  const Parsed p = split(text);
  ExpertPolicy out;
  auto no_arg = [&] {
    if (p.has_arg) throw ConfigError(p.name + " takes no argument");
  };
  if (p.name == "HonestEqualMarkup") {
    no_arg();
    out.kind = ExpertPolicyKind::HonestEqualMarkup;
  } else if (p.name == "SelfInterested") {
    out.kind = ExpertPolicyKind::SelfInterested;
    if (p.has_arg) {
      try {
        out.menu = menu_from_string(p.arg);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
    }
  } else if (p.name == "PmAlwaysHQT") {
    no_arg();
    out.kind = ExpertPolicyKind::PmAlwaysHQT;
  } else if (p.name == "PsUndertreater") {
    no_arg();
    out.kind = ExpertPolicyKind::PsUndertreater;
  } else if (p.name == "HASignaler") {
    no_arg();
    out.kind = ExpertPolicyKind::HASignaler;
  } else if (p.name == "LAImitator") {
    out.kind = ExpertPolicyKind::LAImitator;
    out.r_switch = number(p, out.r_switch);
  } else if (p.name == "OneShotRandomizer") {
    out.kind = ExpertPolicyKind::OneShotRandomizer;
    out.invest_prob = number(p, out.invest_prob);
    if (out.invest_prob < 0.0 || out.invest_prob > 1.0) throw ConfigError("OneShotRandomizer p must lie in [0,1]");
  } else if (p.name == "AlwaysInvest") {
    out.kind = ExpertPolicyKind::AlwaysInvest;
    out.use_aid_prob = number(p, out.use_aid_prob);
    if (out.use_aid_prob < 0.0 || out.use_aid_prob > 1.0) throw ConfigError("AlwaysInvest aid probability must lie in [0,1]");
  } else if (p.name == "NeverInvest") {
    no_arg();
    out.kind = ExpertPolicyKind::NeverInvest;
  } else {
    throw ConfigError("unknown expert policy: " + std::string(text));
  }
  return out;
}

ConsumerPolicy consumer_policy_from_string(std::string_view text) {
  const Parsed p = split(text);
  ConsumerPolicy out;
  if (p.name == "Greedy") {
    out.kind = ConsumerPolicyKind::Greedy;
  } else if (p.name == "BayesianSwitcher") {
    out.kind = ConsumerPolicyKind::BayesianSwitcher;
    out.threshold = number(p, out.threshold);
    if (out.threshold <= 0.0 || out.threshold > 1.0) throw ConfigError("BayesianSwitcher threshold must lie in (0,1]");
  } else if (p.name == "BayesianSwitcherHQT") {
    out.kind = ConsumerPolicyKind::BayesianSwitcher;
    out.threshold = number(p, out.threshold);
    out.low_model_always_hqt = true;
  } else if (p.name == "SafeSeeker") {
    out.kind = ConsumerPolicyKind::SafeSeeker;
  } else if (p.name == "OutsideOptionSitter") {
    out.kind = ConsumerPolicyKind::OutsideOptionSitter;
  } else {
    throw ConfigError("unknown consumer policy: " + std::string(text));
  }
  if (out.kind != ConsumerPolicyKind::BayesianSwitcher && p.has_arg) throw ConfigError(p.name + " takes no argument");
  return out;
}

std::string to_string(const ExpertPolicy& policy) {
  switch (policy.kind) {
    case ExpertPolicyKind::HonestEqualMarkup: return "HonestEqualMarkup";
    case ExpertPolicyKind::SelfInterested: return "SelfInterested(" + std::string(to_string(policy.menu)) + ")";
    case ExpertPolicyKind::PmAlwaysHQT: return "PmAlwaysHQT";
    case ExpertPolicyKind::PsUndertreater: return "PsUndertreater";
    case ExpertPolicyKind::HASignaler: return "HASignaler";
    case ExpertPolicyKind::LAImitator: return "LAImitator(" + fmt(policy.r_switch) + ")";
    case ExpertPolicyKind::OneShotRandomizer: return "OneShotRandomizer(" + fmt(policy.invest_prob) + ")";
    case ExpertPolicyKind::AlwaysInvest: return "AlwaysInvest(" + fmt(policy.use_aid_prob) + ")";
    case ExpertPolicyKind::NeverInvest: return "NeverInvest";
  }
  return "?";
}

std::string to_string(const ConsumerPolicy& policy) {
  switch (policy.kind) {
    case ConsumerPolicyKind::Greedy: return "Greedy";
    case ConsumerPolicyKind::BayesianSwitcher:
      return (policy.low_model_always_hqt ? "BayesianSwitcherHQT(" : "BayesianSwitcher(") + fmt(policy.threshold) + ")";
    case ConsumerPolicyKind::SafeSeeker: return "SafeSeeker";
    case ConsumerPolicyKind::OutsideOptionSitter: return "OutsideOptionSitter";
  }
  return "?";
}

}  // namespace credence
