#include "credence/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "credence/rng.hpp"

namespace credence {

namespace {

struct Walk {
  const InvestmentProfile& profile;
  double t;
  std::array<double, 3> time{0.0, 0.0, 0.0};

  void add(Role r, double dt) { time[static_cast<std::size_t>(r)] += dt; }

  // Uniformly probes the non-investors not yet visited starting at `now`. The high-ability
  // expert keeps a consumer for the rest of the horizon, an imitator for t.
  void probe(double now, std::vector<Role> visited, const Role* fallback, Rng& rng) {
    while (now < 1.0) {
      std::vector<Role> candidates;
      for (Role r : kAllRoles) {
        if (profile.of(r)) continue;
        if (std::find(visited.begin(), visited.end(), r) != visited.end()) continue;
        candidates.push_back(r);
      }
      if (candidates.empty()) {
        if (fallback) add(*fallback, 1.0 - now);
        return;
      }
      auto pick = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(candidates.size()));
      const Role next = candidates[std::min(pick, candidates.size() - 1)];
      if (next == Role::HA) {
        add(next, 1.0 - now);
        return;
      }
      const double stay = std::min(t, 1.0 - now);
      add(next, stay);
      now += stay;
      visited.push_back(next);
    }
  }
};

void walk_consumer(Walk& w, Role home, double alpha, Rng& rng) {
  const InvestmentProfile& p = w.profile;
  const int investors = p.count();
  const bool alpha_type = bernoulli(rng, alpha);
  if (investors == 0 || investors == 3) {
    if (investors == 3 || home == Role::HA) {
      w.add(home, 1.0);
      return;
    }
    w.add(home, w.t);
    w.probe(w.t, {home}, nullptr, rng);
    return;
  }
  if (investors == 1) {
    Role solo = Role::HA;
    for (Role r : kAllRoles)
      if (p.of(r)) solo = r;
    if (alpha_type) {
      w.add(solo, 1.0);
    } else if (home == solo) {
      w.probe(0.0, {}, &solo, rng);
    } else if (home == Role::HA) {
      w.add(home, 1.0);
    } else {
      w.add(home, w.t);
      w.probe(w.t, {home}, &solo, rng);
    }
    return;
  }
  Role remaining = Role::HA;
  for (Role r : kAllRoles)
    if (!p.of(r)) remaining = r;
  if (remaining == Role::HA) {
    w.add(remaining, 1.0);
    return;
  }
  w.add(remaining, w.t);
  std::vector<Role> investing;
  for (Role r : kAllRoles)
    if (p.of(r)) investing.push_back(r);
  const Role next = investing[bernoulli(rng, 0.5) ? 1 : 0];
  w.add(next, 1.0 - w.t);
}

OracleEstimate full_info_oracle(const Distribution& dist, Role role, const InvestmentProfile& profile,
                                const RegionParams& rp, std::size_t n_sims, std::uint64_t seed) {
  const double t = std::clamp(rp.t, 0.0, 1.0);
  std::vector<double> samples(n_sims);
  parallel_for(n_sims, [&](std::size_t sim) {
    Rng rng = substream(seed, {sim});
    Walk w{profile, t};
    for (Role home : kAllRoles) {
      for (int c = 0; c < dist.of(home); ++c) walk_consumer(w, home, rp.alpha, rng);
    }
    samples[sim] = w.time[static_cast<std::size_t>(role)] / 3.0;
  });
  OracleEstimate out;
  out.n_sims = n_sims;
  if (n_sims == 0) return out;
  double sum = 0.0;
  for (double x : samples) sum += x;
  out.mean = sum / static_cast<double>(n_sims);
  double ss = 0.0;
  for (double x : samples) ss += (x - out.mean) * (x - out.mean);
  if (n_sims > 1) out.std_error = std::sqrt(ss / static_cast<double>(n_sims - 1) / static_cast<double>(n_sims));
  return out;
}

}  // namespace

OracleEstimate mc_attraction_oracle(const AttractionScenario& scenario, Role role, const InvestmentProfile& profile,
                                    const RegionParams& rp, std::size_t n_sims, std::uint64_t seed) {
  if (scenario.info == InfoMode::FullInfo) return full_info_oracle(scenario.dist, role, profile, rp, n_sims, seed);
  const auto states = unobserved_states(scenario.dist, role, profile);
  OracleEstimate out;
  out.n_sims = n_sims;
  if (states.empty()) return out;
  double var = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    const auto est = full_info_oracle(s.dist, s.role, s.profile, rp, n_sims, mix64(seed + i));
    out.mean += est.mean;
    var += est.std_error * est.std_error;
  }
  const auto n = static_cast<double>(states.size());
  out.mean /= n;
  out.std_error = std::sqrt(var) / n;
  return out;
}

}  // namespace credence
