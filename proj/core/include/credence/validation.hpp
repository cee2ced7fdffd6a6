#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace credence {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  std::size_t sims = 10000;
  std::uint64_t seed = 7;
};

// Paper values: stage-game incomes, thresholds, one-shot quantities, separation onset.
std::vector<CheckResult> golden_checks();

// Martingale property of the posterior under the prior-predictive mixture, order invariance,
// log/direct agreement and mean consistency when the truth is the low-ability expert.
CheckResult belief_property_check(const SuiteOptions& opt);

// Registry cells against the switching-process oracle at 50 seeded random points, 3 sigma.
CheckResult oracle_agreement_check(const SuiteOptions& opt, std::size_t points = 50);

// Registry coverage: every modeled (distribution, role, profile) resolves to a cell.
CheckResult registry_coverage_check();

// Every condition's closed form against the registry best response on an n x n grid.
CheckResult condition_grid_check(std::size_t n = 200);
std::vector<CheckResult> condition_grid_details(std::size_t n = 200);

// Closed-form consumer incomes against simulated stage games, every menu and mode.
CheckResult stage_game_check(const SuiteOptions& opt, std::size_t draws = 100000);

// Byte-identical reruns plus the accounting identity over at least 10^4 rounds.
CheckResult abm_check(const SuiteOptions& opt);

std::vector<std::string> suite_names();
// Throws std::invalid_argument for unknown suite names.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt);

}  // namespace credence
