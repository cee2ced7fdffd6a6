#include "credence/abm.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "credence/beliefs.hpp"
#include "json.hpp"

namespace credence {

namespace {

using json = nlohmann::ordered_json;

enum Stream : std::uint64_t { kExpertStream = 1, kConsumerStream = 2, kChoiceStream = 3 };

constexpr double kIncomeTie = 1e-9;

double perceived_income(const PriceVector& pv, bool invested, double belief_L, const MarketParams& params) {
  switch (markup_class(pv, params)) {
    case MarkupClass::HQTFavored: return params.v - pv.p_hi;
    case MarkupClass::LQTFavored: return (1.0 - params.h) * params.v - pv.p_lo;
    case MarkupClass::Equal: break;
  }
  const double k = invested ? params.k_inv : mixture_precision(1.0 - belief_L, params);
  return honest_income(k, pv.p_hi, pv.spread(), params);
}

int pick_uniform(const std::vector<int>& options, Rng& rng) {
  const auto n = options.size();
  auto idx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return options[std::min(idx, n - 1)];
}

struct ConsumerState {
  std::array<BeliefState, 3> beliefs;
  int current = -1;
};

}  // namespace

std::string_view to_string(InvestMode mode) { return mode == InvestMode::Skill ? "Skill" : "Algorithm"; }
std::string_view to_string(Horizon horizon) { return horizon == Horizon::Repeated ? "Repeated" : "OneShot"; }

InvestMode invest_mode_from_string(std::string_view name) {
  if (name == "Skill") return InvestMode::Skill;
  if (name == "Algorithm") return InvestMode::Algorithm;
  throw ConfigError("unknown mode: " + std::string(name));
}

Horizon horizon_from_string(std::string_view name) {
  if (name == "Repeated") return Horizon::Repeated;
  if (name == "OneShot") return Horizon::OneShot;
  throw ConfigError("unknown horizon: " + std::string(name));
}

Ability expert_ability(int expert) { return expert == 0 ? Ability::High : Ability::Low; }

int phase2_rounds(const SessionConfig& config) {
  return config.horizon == Horizon::OneShot ? 1 : config.params.R;
}

int total_rounds(const SessionConfig& config) { return config.params.phase1_rounds + phase2_rounds(config); }

RunLog run_session(const SessionConfig& config) {
  try {
    validate(config.params);
  } catch (const ParamError& e) {
    throw ConfigError(e.what());
  }
  if (config.params.phase1_rounds < 0 || config.params.R < 1) throw ConfigError("round counts must be positive");
  const MarketParams& params = config.params;

  RunLog log;
  log.seed = config.seed;
  log.session_id = config.session_id;
  log.mode = config.mode;
  log.horizon = config.horizon;

  const ObsModel model_H = honest_obs_model(params.h, params.z);
  std::array<ConsumerState, 3> consumers;
  for (int c = 0; c < 3; ++c) {
    const ObsModel model_L = config.consumers[c].low_model_always_hqt
                                 ? strategy_obs_model(Strategy::always_hqt(), params.h)
                                 : honest_obs_model(params.h, params.q);
    for (auto& b : consumers[c].beliefs) b = BeliefState{1.0 - params.gamma, model_H, model_L, {}};
  }

  const int rounds = total_rounds(config);
  for (int round = 0; round < rounds; ++round) {
    const bool phase2 = round >= params.phase1_rounds;
    const int p2_round = phase2 ? round - params.phase1_rounds : 0;
    const double weight = phase2 && config.horizon == Horizon::OneShot ? kOneShotWeight : 1.0;

    std::array<ExpertRecord, 3> experts;
    std::array<PriceVector, 3> menus;
    for (int e = 0; e < 3; ++e) {
      Rng rng = substream(config.seed, {config.session_id, static_cast<std::uint64_t>(round), kExpertStream,
                                        static_cast<std::uint64_t>(e)});
      const ExpertContext ctx{phase2, p2_round, expert_ability(e)};
      ExpertRecord& rec = experts[e];
      rec.round = round;
      rec.phase2 = phase2;
      rec.expert = e;
      rec.ability = ctx.ability;
      rec.invested = invest_rule(config.experts[e], ctx, rng);
      rec.used_aid = rec.invested && (config.mode == InvestMode::Skill || use_aid_rule(config.experts[e], ctx, rng));
      rec.menu = price_rule(config.experts[e], ctx);
      menus[e] = price_vector(rec.menu, params, rec.invested);
      rec.p_hi = menus[e].p_hi;
      rec.p_lo = menus[e].p_lo;
      rec.precision = ExpertIdentity{rec.ability, rec.invested}.precision(params, rec.used_aid);
      log.experts.push_back(rec);
    }
    bool unique_investor = false;
    int investor = -1;
    {
      int count = 0;
      for (int e = 0; e < 3; ++e) {
        if (experts[e].invested) {
          ++count;
          investor = e;
        }
      }
      unique_investor = phase2 && count == 1;
    }

    for (int c = 0; c < 3; ++c) {
      ConsumerState& state = consumers[c];
      const ConsumerPolicy& policy = config.consumers[c];
      Rng choice_rng = substream(config.seed, {config.session_id, static_cast<std::uint64_t>(round), kChoiceStream,
                                               static_cast<std::uint64_t>(c)});
      Rng world_rng = substream(config.seed, {config.session_id, static_cast<std::uint64_t>(round), kConsumerStream,
                                              static_cast<std::uint64_t>(c)});
      std::array<double, 3> income{};
      std::array<double, 3> belief{};
      double best = -INFINITY;
      for (int e = 0; e < 3; ++e) {
        belief[e] = posterior(state.beliefs[e]);
        income[e] = perceived_income(menus[e], experts[e].invested, belief[e], params);
        best = std::max(best, income[e]);
      }
      auto argmax_among = [&](const std::vector<int>& pool) {
        double top = -INFINITY;
        for (int e : pool) top = std::max(top, income[e]);
        std::vector<int> ties;
        for (int e : pool)
          if (income[e] >= top - kIncomeTie) ties.push_back(e);
        return pick_uniform(ties, choice_rng);
      };
      const std::vector<int> all{0, 1, 2};

      int chosen = -1;
      const bool enter = best >= params.sigma - kIncomeTie;
      if (enter && policy.kind != ConsumerPolicyKind::OutsideOptionSitter) {
        switch (policy.kind) {
          case ConsumerPolicyKind::Greedy: chosen = argmax_among(all); break;
          case ConsumerPolicyKind::SafeSeeker: chosen = unique_investor ? investor : argmax_among(all); break;
          case ConsumerPolicyKind::BayesianSwitcher: {
            auto flagged = [&](int e) { return belief[e] >= policy.threshold; };
            if (state.current >= 0 && !flagged(state.current) && income[state.current] >= params.sigma - kIncomeTie) {
              chosen = state.current;
            } else {
              std::vector<int> pool;
              for (int e : all)
                if (!flagged(e) && income[e] >= params.sigma - kIncomeTie) pool.push_back(e);
              chosen = pool.empty() ? argmax_among(all) : argmax_among(pool);
            }
            break;
          }
          case ConsumerPolicyKind::OutsideOptionSitter: break;
        }
      }

      ConsumerRecord rec;
      rec.round = round;
      rec.phase2 = phase2;
      rec.consumer = c;
      rec.expert = chosen;
      rec.weight = weight;
      rec.max_expected_income = best;
      rec.problem = draw_problem(params, world_rng);
      if (chosen < 0) {
        rec.consumer_payoff = params.sigma;
        rec.signal = rec.problem;
        rec.belief_L = NAN;
        log.consumers.push_back(rec);
        continue;
      }
      const ExpertRecord& ex = experts[chosen];
      const ExpertContext ctx{phase2, p2_round, ex.ability};
      rec.signal = draw_diagnosis(rec.problem, ex.precision, world_rng);
      rec.treatment = treat_rule(config.experts[chosen], ctx, menus[chosen], rec.signal, params);
      const RoundOutcome outcome = realize_round(rec.problem, rec.treatment, menus[chosen], ex.invested, params);
      rec.solved = outcome.solved;
      rec.invested = ex.invested;
      rec.price = outcome.price_charged;
      rec.cost = rec.treatment == Treatment::HQT ? params.c_hi : params.c_lo;
      rec.consumer_payoff = outcome.consumer_payoff;
      rec.expert_profit = outcome.expert_profit;
      rec.outcome = outcome.outcome_class;
      if (phase2) state.beliefs[chosen].counts.add(outcome_index(outcome.outcome_class));
      rec.belief_L = posterior(state.beliefs[chosen]);
      state.current = chosen;
      log.consumers.push_back(rec);
    }
  }
  return log;
}

std::vector<RunLog> run_batch(const SessionConfig& base, std::size_t sessions) {
  std::vector<RunLog> logs(sessions);
  parallel_for(sessions, [&](std::size_t k) {
    SessionConfig cfg = base;
    cfg.session_id = base.session_id + k;
    logs[k] = run_session(cfg);
  });
  return logs;
}

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Problem problem_from(const std::string& s) {
  if (s == "Big") return Problem::Big;
  if (s == "Small") return Problem::Small;
  throw std::invalid_argument("bad problem: " + s);
}

Treatment treatment_from(const std::string& s) {
  if (s == "HQT") return Treatment::HQT;
  if (s == "LQT") return Treatment::LQT;
  throw std::invalid_argument("bad treatment: " + s);
}

Ability ability_from(const std::string& s) {
  if (s == "High") return Ability::High;
  if (s == "Low") return Ability::Low;
  throw std::invalid_argument("bad ability: " + s);
}

OutcomeClass outcome_from(const std::string& s) {
  for (OutcomeClass o : {OutcomeClass::A_undertreated, OutcomeClass::B_highpaid, OutcomeClass::C_efficient_small})
    if (to_string(o) == s) return o;
  throw std::invalid_argument("bad outcome class: " + s);
}

}  // namespace

void write_runlog(std::ostream& out, const RunLog& log) {
  out << json{{"type", "session"},
              {"seed", log.seed},
              {"session_id", log.session_id},
              {"mode", std::string(to_string(log.mode))},
              {"horizon", std::string(to_string(log.horizon))}}
             .dump()
      << '\n';
  for (const ExpertRecord& r : log.experts) {
    out << json{{"type", "expert"},
                {"round", r.round},
                {"phase2", r.phase2},
                {"expert", r.expert},
                {"ability", std::string(to_string(r.ability))},
                {"invested", r.invested},
                {"used_aid", r.used_aid},
                {"menu", std::string(to_string(r.menu))},
                {"p_hi", r.p_hi},
                {"p_lo", r.p_lo},
                {"precision", r.precision}}
               .dump()
        << '\n';
  }
  for (const ConsumerRecord& r : log.consumers) {
    out << json{{"type", "consumer"},
                {"round", r.round},
                {"phase2", r.phase2},
                {"consumer", r.consumer},
                {"expert", r.expert},
                {"problem", std::string(to_string(r.problem))},
                {"signal", std::string(to_string(r.signal))},
                {"treatment", std::string(to_string(r.treatment))},
                {"solved", r.solved},
                {"invested", r.invested},
                {"price", r.price},
                {"cost", r.cost},
                {"consumer_payoff", r.consumer_payoff},
                {"expert_profit", r.expert_profit},
                {"outcome", std::string(to_string(r.outcome))},
                {"weight", r.weight},
                {"max_expected_income", r.max_expected_income},
                {"belief_L", number_or_null(r.belief_L)}}
               .dump()
        << '\n';
  }
}

std::string runlog_to_string(const RunLog& log) {
  std::ostringstream os;
  write_runlog(os, log);
  return os.str();
}

RunLog read_runlog(std::istream& in) {
  RunLog log;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.at("type").get<std::string>();
    if (type == "session") {
      header = true;
      log.seed = j.at("seed").get<std::uint64_t>();
      log.session_id = j.at("session_id").get<std::uint64_t>();
      log.mode = invest_mode_from_string(j.at("mode").get<std::string>());
      log.horizon = horizon_from_string(j.at("horizon").get<std::string>());
    } else if (type == "expert") {
      ExpertRecord r;
      r.round = j.at("round").get<int>();
      r.phase2 = j.at("phase2").get<bool>();
      r.expert = j.at("expert").get<int>();
      r.ability = ability_from(j.at("ability").get<std::string>());
      r.invested = j.at("invested").get<bool>();
      r.used_aid = j.at("used_aid").get<bool>();
      r.menu = menu_from_string(j.at("menu").get<std::string>());
      r.p_hi = j.at("p_hi").get<double>();
      r.p_lo = j.at("p_lo").get<double>();
      r.precision = j.at("precision").get<double>();
      log.experts.push_back(r);
    } else if (type == "consumer") {
      ConsumerRecord r;
      r.round = j.at("round").get<int>();
      r.phase2 = j.at("phase2").get<bool>();
      r.consumer = j.at("consumer").get<int>();
      r.expert = j.at("expert").get<int>();
      r.problem = problem_from(j.at("problem").get<std::string>());
      r.signal = problem_from(j.at("signal").get<std::string>());
      r.treatment = treatment_from(j.at("treatment").get<std::string>());
      r.solved = j.at("solved").get<bool>();
      r.invested = j.at("invested").get<bool>();
      r.price = j.at("price").get<double>();
      r.cost = j.at("cost").get<double>();
      r.consumer_payoff = j.at("consumer_payoff").get<double>();
      r.expert_profit = j.at("expert_profit").get<double>();
      r.outcome = outcome_from(j.at("outcome").get<std::string>());
      r.weight = j.at("weight").get<double>();
      r.max_expected_income = j.at("max_expected_income").get<double>();
      r.belief_L = j.at("belief_L").is_null() ? NAN : j.at("belief_L").get<double>();
      log.consumers.push_back(r);
    } else {
      throw std::invalid_argument("unknown record type: " + type);
    }
  }
  if (!header) throw std::invalid_argument("run log has no session header");
  return log;
}

SessionConfig session_from_json(const std::string& text, const MarketParams& params) {
  SessionConfig cfg;
  cfg.params = params;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("session config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("session config must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "mode") {
      cfg.mode = invest_mode_from_string(v.get<std::string>());
    } else if (key == "horizon") {
      cfg.horizon = horizon_from_string(v.get<std::string>());
    } else if (key == "experts" || key == "consumers") {
      if (!v.is_array() || v.size() != 3) throw ConfigError(key + " must list three policies");
      for (std::size_t i = 0; i < 3; ++i) {
        const std::string name = v[i].get<std::string>();
        if (key == "experts") cfg.experts[i] = expert_policy_from_string(name);
        else cfg.consumers[i] = consumer_policy_from_string(name);
      }
    } else if (key == "seed") {
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "session_id") {
      cfg.session_id = v.get<std::uint64_t>();
    } else {
      throw ConfigError("unknown session key: " + key);
    }
  }
  return cfg;
}

std::string session_to_json(const SessionConfig& config, int indent) {
  json experts = json::array();
  json consumers = json::array();
  for (const auto& p : config.experts) experts.push_back(to_string(p));
  for (const auto& p : config.consumers) consumers.push_back(to_string(p));
  return json{{"mode", std::string(to_string(config.mode))},
              {"horizon", std::string(to_string(config.horizon))},
              {"experts", experts},
              {"consumers", consumers},
              {"seed", config.seed},
              {"session_id", config.session_id}}
      .dump(indent);
}

}  // namespace credence
