#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "credence/market.hpp"
#include "credence/params.hpp"
#include "credence/policies.hpp"

namespace credence {

enum class InvestMode { Skill, Algorithm };
enum class Horizon { Repeated, OneShot };

std::string_view to_string(InvestMode mode);
std::string_view to_string(Horizon horizon);
InvestMode invest_mode_from_string(std::string_view name);
Horizon horizon_from_string(std::string_view name);

constexpr double kOneShotWeight = 4.0;

// Expert 0 has high ability, experts 1 and 2 low ability.
struct SessionConfig {
  MarketParams params;
  InvestMode mode = InvestMode::Algorithm;
  Horizon horizon = Horizon::Repeated;
  std::array<ExpertPolicy, 3> experts{};
  std::array<ConsumerPolicy, 3> consumers{};
  std::uint64_t seed = 1;
  std::uint64_t session_id = 0;
};

Ability expert_ability(int expert);
int phase2_rounds(const SessionConfig& config);
int total_rounds(const SessionConfig& config);

struct ExpertRecord {
  int round = 0;
  bool phase2 = false;
  int expert = 0;
  Ability ability = Ability::Low;
  bool invested = false;
  bool used_aid = false;
  MenuKind menu = MenuKind::Pm;
  double p_hi = 0.0;
  double p_lo = 0.0;
  double precision = 0.0;
};

struct ConsumerRecord {
  int round = 0;
  bool phase2 = false;
  int consumer = 0;
  int expert = -1;  // -1 for the outside option
  Problem problem = Problem::Small;  // drawn for every consumer, visiting or not
  Problem signal = Problem::Small;
  Treatment treatment = Treatment::LQT;
  bool solved = false;
  bool invested = false;
  double price = 0.0;
  double cost = 0.0;
  double consumer_payoff = 0.0;  // sigma when the outside option is taken
  double expert_profit = 0.0;
  OutcomeClass outcome = OutcomeClass::B_highpaid;
  double weight = 1.0;
  double max_expected_income = 0.0;
  double belief_L = 0.0;  // posterior about the visited expert after this round
};

struct RunLog {
  std::uint64_t seed = 0;
  std::uint64_t session_id = 0;
  InvestMode mode = InvestMode::Algorithm;
  Horizon horizon = Horizon::Repeated;
  std::vector<ExpertRecord> experts;
  std::vector<ConsumerRecord> consumers;

  bool entered(const ConsumerRecord& r) const { return r.expert >= 0; }
};

// Executes invest, price, choice, diagnosis, treatment and payoff steps per round.
// Throws ConfigError for invalid configurations before the first round.
RunLog run_session(const SessionConfig& config);

// Independent sessions in parallel; session k uses session_id = base.session_id + k.
std::vector<RunLog> run_batch(const SessionConfig& base, std::size_t sessions);

// JSON-lines: one header line followed by one line per expert and consumer record.
void write_runlog(std::ostream& out, const RunLog& log);
std::string runlog_to_string(const RunLog& log);
RunLog read_runlog(std::istream& in);

// Session configuration documents use policy identifiers, e.g.
// {"mode": "Algorithm", "horizon": "Repeated", "experts": ["HASignaler", "LAImitator(3)", ...], ...}.
SessionConfig session_from_json(const std::string& text, const MarketParams& params);
std::string session_to_json(const SessionConfig& config, int indent = 2);

}  // namespace credence
