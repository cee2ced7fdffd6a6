#include "doctest.h"

#include <cmath>

#include "credence/beliefs.hpp"

using namespace credence;

namespace {

BeliefState state(double prior, double z, double q, std::uint32_t n, std::uint32_t m, std::uint32_t o) {
  BeliefState s;
  s.prior_L = prior;
  s.model_H = honest_obs_model(0.4, z);
  s.model_L = honest_obs_model(0.4, q);
  s.counts.n = n;
  s.counts.m = m;
  s.counts.o = o;
  return s;
}

// Sequential one-observation updates, the consumer's round-by-round view.
double sequential(double prior, const ObsModel& h, const ObsModel& l, const std::vector<std::size_t>& seq) {
  double p = prior;
  for (std::size_t k : seq) {
    const double num = p * l.probs[k];
    p = num / (num + (1 - p) * h.probs[k]);
  }
  return p;
}

}  // namespace

TEST_CASE("honest observation models") {
  const ObsModel a = honest_obs_model(0.4, 0.75);
  CHECK(a.a() == doctest::Approx(0.10));
  CHECK(a.b() == doctest::Approx(0.45));
  CHECK(a.c() == doctest::Approx(0.45));
  const ObsModel b = honest_obs_model(0.4, 0.5);
  CHECK(b.a() == doctest::Approx(0.20));
  CHECK(b.b() == doctest::Approx(0.50));
  CHECK(b.c() == doctest::Approx(0.30));
  const ObsModel c = honest_obs_model(0.4, 1.0);
  CHECK(c.a() == doctest::Approx(0.0));
  CHECK(c.b() == doctest::Approx(0.4));
  CHECK(c.c() == doctest::Approx(0.6));
  CHECK(is_valid(a));
}

TEST_CASE("strategy observation models") {
  const ObsModel hqt = strategy_obs_model(Strategy::always_hqt(), 0.4);
  CHECK(hqt.b() == 1.0);
  const ObsModel lqt = strategy_obs_model(Strategy::always_lqt(), 0.4);
  CHECK(lqt.a() == doctest::Approx(0.4));
  CHECK(lqt.b() == 0.0);
  CHECK(lqt.c() == doctest::Approx(0.6));
  const ObsModel h9 = strategy_obs_model(Strategy::honest(0.9), 0.4);
  CHECK(h9.a() == doctest::Approx(0.04));
  CHECK(h9.b() == doctest::Approx(0.42));
  CHECK(h9.c() == doctest::Approx(0.54));
}

TEST_CASE("posterior examples") {
  CHECK(posterior(state(0.4, 0.75, 0.5, 1, 0, 0)) == doctest::Approx(4.0 / 7.0));
  CHECK(posterior(state(0.4, 0.75, 0.5, 0, 0, 0)) == doctest::Approx(0.4));
  CHECK(posterior(state(1.0, 0.75, 0.5, 2, 3, 1)) == doctest::Approx(1.0));
  CHECK(posterior(state(0.0, 0.75, 0.5, 2, 3, 1)) == doctest::Approx(0.0));
}

TEST_CASE("log-space posterior matches plain products and sequential updates") {
  const ObsModel h = honest_obs_model(0.4, 0.75);
  const ObsModel l = honest_obs_model(0.4, 0.5);
  for (std::uint32_t n = 0; n < 4; ++n) {
    for (std::uint32_t m = 0; m < 4; ++m) {
      for (std::uint32_t o = 0; o < 4; ++o) {
        const BeliefState s = state(0.3, 0.75, 0.5, n, m, o);
        std::vector<std::size_t> seq;
        seq.insert(seq.end(), n, 0);
        seq.insert(seq.end(), m, 1);
        seq.insert(seq.end(), o, 2);
        CHECK(posterior(s) == doctest::Approx(posterior_direct(s)).epsilon(1e-12));
        CHECK(posterior(s) == doctest::Approx(sequential(0.3, h, l, seq)).epsilon(1e-12));
        std::vector<std::size_t> rev(seq.rbegin(), seq.rend());
        CHECK(sequential(0.3, h, l, rev) == doctest::Approx(sequential(0.3, h, l, seq)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("large counts stay finite") {
  const double p = posterior(state(0.4, 0.75, 0.5, 400, 900, 700));
  CHECK(std::isfinite(p));
  CHECK(p >= 0.0);
  CHECK(p <= 1.0);
}

TEST_CASE("impossible data returns the prior with a flag") {
  BeliefState s;
  s.prior_L = 0.4;
  s.model_H = strategy_obs_model(Strategy::always_hqt(), 0.4);
  s.model_L = strategy_obs_model(Strategy::always_hqt(), 0.4);
  s.counts.n = 1;
  const PosteriorResult r = posterior_detail(s);
  CHECK(r.impossible_data);
  CHECK(r.pr_L == doctest::Approx(0.4));
}

TEST_CASE("one-step posterior is an exact martingale under the prior predictive") {
  const ObsModel h = honest_obs_model(0.4, 0.75);
  const ObsModel l = honest_obs_model(0.4, 0.5);
  for (double prior : {0.1, 0.2, 0.4, 0.7}) {
    double expected = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double pk = prior * l.probs[k] + (1 - prior) * h.probs[k];
      expected += pk * sequential(prior, h, l, {k});
    }
    CHECK(expected == doctest::Approx(prior).epsilon(1e-12));
  }
}

TEST_CASE("mean belief path rises when the truth is the honest imitator") {
  const ObsModel h = honest_obs_model(0.4, 0.75);
  const ObsModel l = honest_obs_model(0.4, 0.5);
  for (double prior : {0.4, 0.2}) {
    const BeliefPathSummary s = simulate_belief_paths(prior, l, {h, l}, 15, 10000, 7);
    REQUIRE(s.mean_path.size() == 16);
    CHECK(s.mean_path[0] == doctest::Approx(prior));
    for (std::size_t r = 1; r < s.mean_path.size(); ++r) CHECK(s.mean_path[r] > s.mean_path[r - 1]);
    for (std::size_t r = 0; r < s.mean_path.size(); ++r) {
      CHECK(s.q10[r] <= s.mean_path[r] + 1e-12);
      CHECK(s.q90[r] >= s.q10[r]);
    }
    if (prior == 0.4) CHECK(s.mean_path.back() > 0.6);
  }
  const BeliefPathSummary a = simulate_belief_paths(0.4, l, {h, l}, 15, 10000, 7);
  const BeliefPathSummary b = simulate_belief_paths(0.2, l, {h, l}, 15, 10000, 7);
  CHECK(b.mean_path[1] < a.mean_path[1]);
}

TEST_CASE("belief paths are reproducible") {
  const ObsModel h = honest_obs_model(0.4, 0.75);
  const ObsModel l = honest_obs_model(0.4, 0.5);
  const BeliefPathSummary a = simulate_belief_paths(0.4, l, {h, l}, 5, 2000, 3);
  const BeliefPathSummary b = simulate_belief_paths(0.4, l, {h, l}, 5, 2000, 3);
  CHECK(a.mean_path == b.mean_path);
  CHECK(a.q90 == b.q90);
}

TEST_CASE("always-HQT imitator is unmasked by the first non-HQT outcome") {
  const ObsModel h = honest_obs_model(0.4, 0.75);
  const ObsModel l = strategy_obs_model(Strategy::always_hqt(), 0.4);
  BeliefState s;
  s.prior_L = 0.4;
  s.model_H = h;
  s.model_L = l;
  s.counts.n = 0;
  s.counts.m = 3;
  s.counts.o = 1;
  CHECK(posterior(s) == doctest::Approx(0.0));
  // All-HQT streams multiply the odds of L by 1/0.45 per round.
  for (std::uint32_t r = 0; r < 8; ++r) {
    s.counts.m = r;
    s.counts.o = 0;
    const double p = posterior(s);
    const double odds = (0.4 / 0.6) * std::pow(1.0 / 0.45, r);
    CHECK(p == doctest::Approx(odds / (1 + odds)).epsilon(1e-12));
  }
}

TEST_CASE("first passage") {
  const ObsModel h = honest_obs_model(0.4, 0.75);
  const ObsModel l = honest_obs_model(0.4, 0.5);
  const FirstPassage half = first_passage_r(0.4, l, {h, l}, 0.5, 15, 4000, 7);
  CHECK(half.median <= 5.0);
  CHECK(half.rounds.size() == 4000);
  const FirstPassage one = first_passage_r(0.4, l, {h, l}, 1.0, 15, 500, 7);
  CHECK(one.censored_count == 500);
  CHECK(one.sentinel == 16);
  const FirstPassage zero = first_passage_r(0.0, l, {h, l}, 0.3, 15, 500, 7);
  CHECK(zero.censored_count == 500);
}

TEST_CASE("sample quantiles") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  CHECK(sorted_quantile(xs, 0.0) == 1.0);
  CHECK(sorted_quantile(xs, 0.5) == 3.0);
  CHECK(sorted_quantile(xs, 0.1) == doctest::Approx(1.4));
  CHECK(sorted_quantile(xs, 1.0) == 5.0);
}
