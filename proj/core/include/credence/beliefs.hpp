#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "credence/market.hpp"
#include "credence/params.hpp"
#include "credence/rng.hpp"

namespace credence {

// Probabilities of the three observable outcomes: (a) undertreatment, (b) HQT paid,
// (c) small problem solved with the LQT.
struct ObsModel {
  std::array<double, 3> probs{0.0, 1.0, 0.0};

  double a() const { return probs[0]; }
  double b() const { return probs[1]; }
  double c() const { return probs[2]; }
};

bool is_valid(const ObsModel& model, double tolerance = 1e-12);

ObsModel honest_obs_model(double h, double k);

enum class StrategyKind { Honest, AlwaysHQT, AlwaysLQT };

struct Strategy {
  StrategyKind kind = StrategyKind::Honest;
  double k = 0.5;  // diagnostic precision, used by Honest only

  static Strategy honest(double precision) { return {StrategyKind::Honest, precision}; }
  static Strategy always_hqt() { return {StrategyKind::AlwaysHQT, 0.0}; }
  static Strategy always_lqt() { return {StrategyKind::AlwaysLQT, 0.0}; }
};

ObsModel strategy_obs_model(const Strategy& strategy, double h);

std::size_t outcome_index(OutcomeClass value);

struct Counts {
  std::uint32_t n = 0;  // class a
  std::uint32_t m = 0;  // class b
  std::uint32_t o = 0;  // class c

  void add(std::size_t outcome);
  std::uint32_t total() const { return n + m + o; }
};

struct BeliefState {
  double prior_L = 0.5;
  ObsModel model_H;
  ObsModel model_L;
  Counts counts;
};

struct PosteriorResult {
  double pr_L = 0.0;
  bool impossible_data = false;  // both hypotheses assign zero probability; prior returned
};

// Bayes posterior Pr(L | counts) evaluated in log space. Multinomial coefficients cancel.
PosteriorResult posterior_detail(const BeliefState& state);
double posterior(const BeliefState& state);
// Same posterior computed with plain products, for cross-checks on small counts.
double posterior_direct(const BeliefState& state);

struct BeliefPathSummary {
  std::vector<double> mean_path;  // index 0 is the prior, index r is after r observations
  std::vector<double> q10;
  std::vector<double> q90;
  std::vector<double> std_error_path;
  std::size_t n_sims = 0;
  std::uint64_t seed = 0;
};

struct ConsumerModels {
  ObsModel model_H;
  ObsModel model_L;
};

// Outcomes are drawn from `truth`; each replication uses its own substream of `seed`.
BeliefPathSummary simulate_belief_paths(double prior_L, const ObsModel& truth, const ConsumerModels& models,
                                        int rounds, std::size_t n_sims, std::uint64_t seed);

struct FirstPassage {
  std::vector<int> rounds;        // per replication; max_rounds + 1 when censored
  std::vector<bool> censored;
  std::size_t censored_count = 0;
  double mean = 0.0;              // over all replications, censored ones at the sentinel
  double median = 0.0;
  int sentinel = 0;
};

FirstPassage first_passage_r(double prior_L, const ObsModel& truth, const ConsumerModels& models, double threshold,
                             int max_rounds, std::size_t n_sims, std::uint64_t seed);

// Type-7 sample quantile of an already sorted range.
double sorted_quantile(const std::vector<double>& sorted, double p);

}  // namespace credence
