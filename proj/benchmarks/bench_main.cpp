#include <benchmark/benchmark.h>

#include "credence/abm.hpp"
#include "credence/beliefs.hpp"
#include "credence/conditions.hpp"
#include "credence/equilibria.hpp"

using namespace credence;

static void bm_posterior(benchmark::State& state) {
  BeliefState s;
  s.prior_L = 0.4;
  s.model_H = honest_obs_model(0.4, 0.75);
  s.model_L = honest_obs_model(0.4, 0.5);
  s.counts.n = 3;
  s.counts.m = 7;
  s.counts.o = 5;
  for (auto _ : state) benchmark::DoNotOptimize(posterior(s));
}
BENCHMARK(bm_posterior);

static void bm_belief_paths(benchmark::State& state) {
  const ObsModel h = honest_obs_model(0.4, 0.75);
  const ObsModel l = honest_obs_model(0.4, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_belief_paths(0.4, l, {h, l}, 15, static_cast<std::size_t>(state.range(0)), 7));
  }
}
BENCHMARK(bm_belief_paths)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void bm_condition_registry(benchmark::State& state) {
  const RegionParams rp{0.4, 0.6, 15};
  for (auto _ : state) {
    for (const ConditionSpec& c : condition_registry()) benchmark::DoNotOptimize(best_response_holds(c, rp));
  }
}
BENCHMARK(bm_condition_registry);

static void bm_region_grid(benchmark::State& state) {
  const AttractionScenario sc{{0, 3, 0}, InfoMode::NoOtherInfo};
  for (auto _ : state) benchmark::DoNotOptimize(region_grid(sc, Analysis::Nash, {200, 200}, 15));
}
BENCHMARK(bm_region_grid)->Unit(benchmark::kMillisecond);

static void bm_abm_session(benchmark::State& state) {
  SessionConfig cfg;
  cfg.params = default_params();
  cfg.experts = {expert_policy_from_string("HASignaler"), expert_policy_from_string("LAImitator(3)"),
                 expert_policy_from_string("OneShotRandomizer(0.5)")};
  cfg.consumers = {consumer_policy_from_string("BayesianSwitcher(0.9)"), consumer_policy_from_string("SafeSeeker"),
                   consumer_policy_from_string("Greedy")};
  for (auto _ : state) benchmark::DoNotOptimize(run_session(cfg));
}
BENCHMARK(bm_abm_session)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
