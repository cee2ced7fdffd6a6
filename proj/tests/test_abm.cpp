#include "doctest.h"

#include <cmath>
#include <sstream>

#include "credence/abm.hpp"
#include "credence/metrics.hpp"

using namespace credence;

namespace {

SessionConfig make(const std::array<const char*, 3>& experts, const std::array<const char*, 3>& consumers,
                   std::uint64_t seed = 7) {
  SessionConfig cfg;
  cfg.params = default_params();
  for (int i = 0; i < 3; ++i) {
    cfg.experts[i] = expert_policy_from_string(experts[i]);
    cfg.consumers[i] = consumer_policy_from_string(consumers[i]);
  }
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("policy identifiers") {
  const ExpertPolicy im = expert_policy_from_string("LAImitator(5)");
  CHECK(im.kind == ExpertPolicyKind::LAImitator);
  CHECK(im.r_switch == 5.0);
  const ExpertPolicy si = expert_policy_from_string("SelfInterested(Ps)");
  CHECK(si.menu == MenuKind::Ps);
  CHECK(expert_policy_from_string("AlwaysInvest(0.7)").use_aid_prob == doctest::Approx(0.7));
  const ConsumerPolicy bs = consumer_policy_from_string("BayesianSwitcherHQT(0.8)");
  CHECK(bs.kind == ConsumerPolicyKind::BayesianSwitcher);
  CHECK(bs.low_model_always_hqt);
  CHECK(bs.threshold == doctest::Approx(0.8));
  CHECK(to_string(expert_policy_from_string(to_string(im))) == to_string(im));
  CHECK_THROWS_AS(expert_policy_from_string("Nonsense"), ConfigError);
  CHECK_THROWS_AS(consumer_policy_from_string("Greedy(1"), ConfigError);
  CHECK_THROWS_AS(expert_policy_from_string("OneShotRandomizer(1.5)"), ConfigError);
  CHECK(builtin_policies().size() == 13);
}

TEST_CASE("session lengths") {
  SessionConfig cfg = make({"HonestEqualMarkup", "HonestEqualMarkup", "HonestEqualMarkup"}, {"Greedy", "Greedy", "Greedy"});
  CHECK(total_rounds(cfg) == 25);
  cfg.horizon = Horizon::OneShot;
  CHECK(total_rounds(cfg) == 11);
  const RunLog log = run_session(cfg);
  CHECK(log.consumers.size() == 33);
  CHECK(log.experts.size() == 33);
  for (const ConsumerRecord& r : log.consumers) CHECK(r.weight == (r.phase2 ? kOneShotWeight : 1.0));
}

TEST_CASE("HQT-favoring script overtreats every small problem") {
  const SessionConfig cfg = make({"PmAlwaysHQT", "PmAlwaysHQT", "PmAlwaysHQT"}, {"Greedy", "Greedy", "Greedy"});
  const auto logs = run_batch(cfg, 140);
  const Metrics m = compute_metrics(logs, cfg.params);
  CHECK(m.consumer_rounds >= 10000);
  CHECK(m.undertreatment == 0.0);
  CHECK(std::abs(m.overtreatment - 0.6) <= 0.02);
  CHECK(std::abs(m.efficient_treatment - 0.4) <= 0.02);
  CHECK(m.price_vector_shares[0] == 1.0);
}

TEST_CASE("a signaling high-ability expert keeps more than a third of phase-2 demand") {
  const SessionConfig cfg = make({"HASignaler", "LAImitator(1)", "LAImitator(1)"},
                                 {"BayesianSwitcherHQT(0.9)", "BayesianSwitcherHQT(0.9)", "BayesianSwitcherHQT(0.9)"});
  const Metrics m = compute_metrics(run_batch(cfg, 300), cfg.params);
  CHECK(m.phase2_share_high > 1.0 / 3.0);
}

TEST_CASE("reruns are byte-identical and batches match single sessions") {
  const SessionConfig cfg = make({"AlwaysInvest(0.7)", "LAImitator(5)", "OneShotRandomizer(0.5)"},
                                 {"BayesianSwitcher(0.9)", "SafeSeeker", "Greedy"}, 99);
  CHECK(runlog_to_string(run_session(cfg)) == runlog_to_string(run_session(cfg)));
  const auto batch = run_batch(cfg, 8);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    SessionConfig one = cfg;
    one.session_id = cfg.session_id + k;
    CHECK(runlog_to_string(batch[k]) == runlog_to_string(run_session(one)));
  }
  SessionConfig other = cfg;
  other.seed = 100;
  CHECK(runlog_to_string(run_session(other)) != runlog_to_string(run_session(cfg)));
}

TEST_CASE("accounting identity and verifiability over ten thousand rounds") {
  const SessionConfig cfg = make({"AlwaysInvest", "LAImitator(3)", "OneShotRandomizer(0.5)"},
                                 {"BayesianSwitcher(0.9)", "SafeSeeker", "Greedy"});
  std::size_t rounds = 0;
  for (const RunLog& log : run_batch(cfg, 150)) {
    rounds += log.consumers.size();
    CHECK(accounting_residual(log, cfg.params) <= 1e-9);
    CHECK(verifiability_violations(log) == 0);
    for (const ConsumerRecord& r : log.consumers) {
      if (r.expert < 0) continue;
      // Independent recomputation from the record's own fields.
      const double surplus = (r.solved ? cfg.params.v : 0.0) - r.cost - (r.invested ? cfg.params.d : 0.0);
      CHECK(r.consumer_payoff + r.expert_profit == doctest::Approx(surplus));
      CHECK(r.solved == (r.problem == Problem::Small || r.treatment == Treatment::HQT));
    }
  }
  CHECK(rounds >= 10000);
}

TEST_CASE("randomizing experts invest half of the time") {
  SessionConfig cfg = make({"OneShotRandomizer(0.5)", "OneShotRandomizer(0.5)", "OneShotRandomizer(0.5)"},
                           {"Greedy", "Greedy", "Greedy"});
  cfg.horizon = Horizon::OneShot;
  std::size_t decisions = 0;
  std::size_t invests = 0;
  for (const RunLog& log : run_batch(cfg, 10000)) {
    for (const ExpertRecord& e : log.experts) {
      if (!e.phase2) continue;
      ++decisions;
      invests += e.invested;
    }
  }
  CHECK(decisions == 30000);
  CHECK(std::abs(static_cast<double>(invests) / decisions - 0.5) <= 0.01);
}

TEST_CASE("honest high-ability expert delivers its transparent income") {
  const SessionConfig cfg = make({"NeverInvest", "NeverInvest", "NeverInvest"}, {"Greedy", "Greedy", "Greedy"});
  double total = 0.0;
  std::size_t n = 0;
  for (const RunLog& log : run_batch(cfg, 1500)) {
    for (const ConsumerRecord& r : log.consumers) {
      if (!r.phase2 || r.expert != 0) continue;
      total += r.consumer_payoff;
      ++n;
    }
  }
  REQUIRE(n >= 10000);
  CHECK(std::abs(total / n - 57.0) <= 1.0);
}

TEST_CASE("outside-option sitters never enter") {
  const SessionConfig cfg = make({"HonestEqualMarkup", "HonestEqualMarkup", "HonestEqualMarkup"},
                                 {"OutsideOptionSitter", "OutsideOptionSitter", "OutsideOptionSitter"});
  const RunLog log = run_session(cfg);
  for (const ConsumerRecord& r : log.consumers) {
    CHECK(r.expert == -1);
    CHECK(r.consumer_payoff == cfg.params.sigma);
  }
  const Metrics m = compute_metrics(log, cfg.params);
  CHECK(m.market_entry_rate == 0.0);
  CHECK(m.efficiency == 0.0);
}

TEST_CASE("safe seekers follow the unique investor") {
  const SessionConfig cfg = make({"NeverInvest", "AlwaysInvest", "NeverInvest"}, {"SafeSeeker", "SafeSeeker", "SafeSeeker"});
  const RunLog log = run_session(cfg);
  for (const ConsumerRecord& r : log.consumers) {
    if (r.phase2) CHECK(r.expert == 1);
  }
}

TEST_CASE("run logs round-trip through json lines") {
  const SessionConfig cfg = make({"HASignaler", "LAImitator(3)", "LAImitator(3)"}, {"Greedy", "SafeSeeker", "Greedy"});
  const RunLog log = run_session(cfg);
  std::istringstream in(runlog_to_string(log));
  const RunLog back = read_runlog(in);
  CHECK(back.consumers.size() == log.consumers.size());
  CHECK(runlog_to_string(back) == runlog_to_string(log));
}

TEST_CASE("session documents") {
  const MarketParams p = default_params();
  const SessionConfig cfg = session_from_json(
      R"j({"mode": "Skill", "horizon": "OneShot", "experts": ["HASignaler", "LAImitator(2)", "NeverInvest"],
          "consumers": ["Greedy", "SafeSeeker", "BayesianSwitcher(0.8)"], "seed": 5})j",
      p);
  CHECK(cfg.mode == InvestMode::Skill);
  CHECK(cfg.horizon == Horizon::OneShot);
  CHECK(cfg.seed == 5);
  CHECK(cfg.experts[1].r_switch == 2.0);
  const SessionConfig back = session_from_json(session_to_json(cfg), p);
  CHECK(session_to_json(back) == session_to_json(cfg));
  CHECK_THROWS_AS(session_from_json(R"({"colour": 1})", p), ConfigError);
  CHECK_THROWS_AS(session_from_json(R"({"experts": ["HASignaler"]})", p), ConfigError);
  SessionConfig bad = cfg;
  bad.params.h = 2.0;
  CHECK_THROWS_AS(run_session(bad), ConfigError);
}
