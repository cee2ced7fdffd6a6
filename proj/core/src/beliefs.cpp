#include "credence/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace credence {

bool is_valid(const ObsModel& model, double tolerance) {
  double sum = 0.0;
  for (double p : model.probs) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tolerance;
}

ObsModel honest_obs_model(double h, double k) {
  ObsModel m;
  m.probs[0] = h * (1.0 - k);
  m.probs[2] = (1.0 - h) * k;
  m.probs[1] = 1.0 - m.probs[0] - m.probs[2];
  return m;
}

ObsModel strategy_obs_model(const Strategy& strategy, double h) {
  switch (strategy.kind) {
    case StrategyKind::Honest: return honest_obs_model(h, strategy.k);
    case StrategyKind::AlwaysHQT: return ObsModel{{0.0, 1.0, 0.0}};
    case StrategyKind::AlwaysLQT: return ObsModel{{h, 0.0, 1.0 - h}};
  }
  return ObsModel{};
}

std::size_t outcome_index(OutcomeClass value) {
  switch (value) {
    case OutcomeClass::A_undertreated: return 0;
    case OutcomeClass::B_highpaid: return 1;
    case OutcomeClass::C_efficient_small: return 2;
  }
  return 1;
}

void Counts::add(std::size_t outcome) {
  if (outcome == 0) ++n;
  else if (outcome == 1) ++m;
  else ++o;
}

namespace {

double log_likelihood(const ObsModel& model, const Counts& c) {
  const std::array<std::uint32_t, 3> k{c.n, c.m, c.o};
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (k[i] == 0) continue;
    if (model.probs[i] <= 0.0) return -std::numeric_limits<double>::infinity();
    total += static_cast<double>(k[i]) * std::log(model.probs[i]);
  }
  return total;
}

std::size_t draw_outcome(const ObsModel& model, Rng& rng) {
  const double u = uniform01(rng);
  if (u < model.probs[0]) return 0;
  if (u < model.probs[0] + model.probs[1]) return 1;
  return 2;
}

}  // namespace

PosteriorResult posterior_detail(const BeliefState& s) {
  PosteriorResult out;
  const double ll_l = log_likelihood(s.model_L, s.counts);
  const double ll_h = log_likelihood(s.model_H, s.counts);
  const bool l_possible = std::isfinite(ll_l);
  const bool h_possible = std::isfinite(ll_h);
  if (!l_possible && !h_possible) {
    out.pr_L = s.prior_L;
    out.impossible_data = true;
    return out;
  }
  if (s.prior_L <= 0.0) {
    out.pr_L = h_possible ? 0.0 : s.prior_L;
    out.impossible_data = !h_possible;
    return out;
  }
  if (s.prior_L >= 1.0) {
    out.pr_L = l_possible ? 1.0 : s.prior_L;
    out.impossible_data = !l_possible;
    return out;
  }
  if (!l_possible) {
    out.pr_L = 0.0;
    return out;
  }
  if (!h_possible) {
    out.pr_L = 1.0;
    return out;
  }
  // Pr(L) = 1 / (1 + exp(log odds of H against L))
  const double log_odds_h = (ll_h + std::log1p(-s.prior_L)) - (ll_l + std::log(s.prior_L));
  out.pr_L = 1.0 / (1.0 + std::exp(log_odds_h));
  return out;
}

double posterior(const BeliefState& state) { return posterior_detail(state).pr_L; }

double posterior_direct(const BeliefState& s) {
  auto likelihood = [&](const ObsModel& m) {
    return std::pow(m.a(), s.counts.n) * std::pow(m.b(), s.counts.m) * std::pow(m.c(), s.counts.o);
  };
  const double num = likelihood(s.model_L) * s.prior_L;
  const double den = num + likelihood(s.model_H) * (1.0 - s.prior_L);
  if (den == 0.0) return s.prior_L;
  return num / den;
}

double sorted_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BeliefPathSummary simulate_belief_paths(double prior_L, const ObsModel& truth, const ConsumerModels& models,
                                        int rounds, std::size_t n_sims, std::uint64_t seed) {
  const auto width = static_cast<std::size_t>(rounds) + 1;
  std::vector<double> paths(n_sims * width);
  parallel_for(n_sims, [&](std::size_t sim) {
    Rng rng = substream(seed, {sim});
    BeliefState state{prior_L, models.model_H, models.model_L, {}};
    double* row = paths.data() + sim * width;
    row[0] = prior_L;
    for (int r = 1; r <= rounds; ++r) {
      state.counts.add(draw_outcome(truth, rng));
      row[r] = posterior(state);
    }
  });

  BeliefPathSummary out;
  out.n_sims = n_sims;
  out.seed = seed;
  out.mean_path.resize(width);
  out.q10.resize(width);
  out.q90.resize(width);
  out.std_error_path.resize(width);
  std::vector<double> column(n_sims);
  for (std::size_t r = 0; r < width; ++r) {
    double sum = 0.0;
    for (std::size_t sim = 0; sim < n_sims; ++sim) {
      column[sim] = paths[sim * width + r];
      sum += column[sim];
    }
    const double mean = n_sims ? sum / static_cast<double>(n_sims) : 0.0;
    double ss = 0.0;
    for (double x : column) ss += (x - mean) * (x - mean);
    std::sort(column.begin(), column.end());
    out.mean_path[r] = mean;
    out.q10[r] = sorted_quantile(column, 0.10);
    out.q90[r] = sorted_quantile(column, 0.90);
    out.std_error_path[r] = n_sims > 1 ? std::sqrt(ss / static_cast<double>(n_sims - 1) / static_cast<double>(n_sims)) : 0.0;
  }
  return out;
}

FirstPassage first_passage_r(double prior_L, const ObsModel& truth, const ConsumerModels& models, double threshold,
                             int max_rounds, std::size_t n_sims, std::uint64_t seed) {
  FirstPassage out;
  out.sentinel = max_rounds + 1;
  out.rounds.assign(n_sims, out.sentinel);
  std::vector<char> hit(n_sims, 0);
  parallel_for(n_sims, [&](std::size_t sim) {
    Rng rng = substream(seed, {sim});
    BeliefState state{prior_L, models.model_H, models.model_L, {}};
    if (prior_L >= threshold) {
      out.rounds[sim] = 0;
      hit[sim] = 1;
      return;
    }
    for (int r = 1; r <= max_rounds; ++r) {
      state.counts.add(draw_outcome(truth, rng));
      if (posterior(state) >= threshold) {
        out.rounds[sim] = r;
        hit[sim] = 1;
        return;
      }
    }
  });
  out.censored.resize(n_sims);
  std::vector<double> sorted(n_sims);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_sims; ++i) {
    out.censored[i] = hit[i] == 0;
    if (out.censored[i]) ++out.censored_count;
    sorted[i] = out.rounds[i];
    sum += out.rounds[i];
  }
  std::sort(sorted.begin(), sorted.end());
  out.mean = n_sims ? sum / static_cast<double>(n_sims) : 0.0;
  out.median = sorted_quantile(sorted, 0.5);
  return out;
}

}  // namespace credence
