#include "credence/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "credence/abm.hpp"
#include "credence/beliefs.hpp"
#include "credence/conditions.hpp"
#include "credence/equilibria.hpp"
#include "credence/metrics.hpp"
#include "credence/oneshot.hpp"
#include "credence/oracle.hpp"
#include "credence/thresholds.hpp"

namespace credence {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

template <class F>
CheckResult timed(const std::string& name, F&& body) {
  const auto start = Clock::now();
  CheckResult r = body();
  r.name = name;
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

CheckResult near(const std::string& name, double value, double target, double tol) {
  CheckResult r;
  r.name = name;
  r.pass = std::abs(value - target) <= tol;
  r.detail = fmt("value %.10g, target %.10g, tolerance %.3g", value, target, tol);
  return r;
}

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  const double n = static_cast<double>(xs.size());
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  if (xs.size() > 1) m.se = std::sqrt(ss / (n - 1.0) / n);
  return m;
}

std::size_t draw_index(const ObsModel& model, Rng& rng) {
  const double u = uniform01(rng);
  if (u < model.probs[0]) return 0;
  if (u < model.probs[0] + model.probs[1]) return 1;
  return 2;
}

}  // namespace

std::vector<CheckResult> golden_checks() {
  const MarketParams p = default_params();
  std::vector<CheckResult> out;
  out.push_back(near("pi_m equals 50", expected_consumer_income(MenuKind::Pm, IncomeMode::Obfuscated, false, p), 50.0,
                     1e-9));
  out.push_back(near("pi_s equals 10", expected_consumer_income(MenuKind::Ps, IncomeMode::Obfuscated, false, p), 10.0,
                     1e-9));
  out.push_back(near("obfuscated pi_e equals 45.67",
                     expected_consumer_income(MenuKind::Pe, IncomeMode::Obfuscated, false, p), 45.67, 0.01));
  const ThresholdSet obf = price_thresholds(p, IncomeMode::Obfuscated);
  out.push_back(near("h_m obfuscated near 0.337", obf.h_m.value_or(NAN), 0.337, 0.005));
  out.push_back(near("h_m obfuscated near reported 0.34", obf.h_m.value_or(NAN), 0.34, 0.005));
  const BeliefBounds bb = belief_bounds(p);
  out.push_back(near("gamma_m equals 10/17", bb.gamma_m.value_or(NAN), 10.0 / 17.0, 1e-12));
  out.push_back(near("gamma_m near reported 0.59", bb.gamma_m.value_or(NAN), 0.59, 0.005));
  {
    CheckResult r;
    r.name = "prop1 region at h = 0.4 is Pm";
    const MenuKind region = prop1_region(0.4, p);
    r.pass = region == MenuKind::Pm;
    r.detail = std::string("region ") + std::string(to_string(region));
    out.push_back(r);
  }
  out.push_back(near("transparent high-ability Pe income is 57", transparent_high_income(p), 57.0, 1e-9));
  out.push_back(near("transparent low-ability Pe income is 40", transparent_low_income(p), 40.0, 1e-9));
  out.push_back(near("one-shot pooled income is 48.5", oneshot_pooled_income(p), 48.5, 1e-9));
  out.push_back(
      near("w_ninv at gamma 0 equals 17/27", signaling_thresholds(p, 0.0, 0.0).w_ninv.value_or(NAN), 17.0 / 27.0, 1e-12));
  out.push_back(near("all-invest uncertainty bound near 0.48", all_invest_w_threshold(experiment2_params(), 10.0).value_or(NAN),
                     0.48, 0.01));
  out.push_back(near("separation onset for x_la = 3", separation_onset(p.R).value_or(NAN), (std::sqrt(13.0) - 2.0) / 3.0,
                     1e-3));
  {
    CheckResult r;
    r.name = "one-shot mixed probability is exactly 1/2";
    const OneShotSolution s = oneshot_mixed_solver();
    r.pass = s.exact && s.p_num == 1 && s.p_den == 2 && s.kind == OneShotKind::Mixed;
    r.detail = fmt("p = %.0f/%.0f", static_cast<double>(s.p_num), static_cast<double>(s.p_den));
    out.push_back(r);
  }
  return out;
}

CheckResult belief_property_check(const SuiteOptions& opt) {
  return timed("belief martingale and order invariance", [&] {
    const MarketParams p = default_params();
    const ObsModel mH = honest_obs_model(p.h, p.z);
    const ObsModel mL = honest_obs_model(p.h, p.q);
    std::vector<std::string> failures;

    for (double prior : {0.4, 0.2}) {
      for (int steps : {1, 5}) {
        std::vector<double> post(opt.sims);
        parallel_for(opt.sims, [&](std::size_t sim) {
          Rng rng = substream(opt.seed, {11, static_cast<std::uint64_t>(prior * 1000), static_cast<std::uint64_t>(steps), sim});
          const bool truth_L = bernoulli(rng, prior);
          BeliefState s{prior, mH, mL, {}};
          for (int k = 0; k < steps; ++k) s.counts.add(draw_index(truth_L ? mL : mH, rng));
          post[sim] = posterior(s);
        });
        const Moments m = moments(post);
        if (std::abs(m.mean - prior) > 3.0 * m.se + 1e-12)
          failures.push_back(fmt("martingale prior %.2f steps %.0f mean %.6f", prior, steps, m.mean));
      }
    }

    Rng rng = substream(opt.seed, {12});
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<std::size_t> seq(30);
      for (auto& o : seq) o = draw_index(mL, rng);
      auto sequential = [&](const std::vector<std::size_t>& order) {
        double pr = 0.4;
        for (std::size_t o : order) {
          BeliefState one{pr, mH, mL, {}};
          one.counts.add(o);
          pr = posterior(one);
        }
        return pr;
      };
      BeliefState batch{0.4, mH, mL, {}};
      for (std::size_t o : seq) batch.counts.add(o);
      const double reference = posterior(batch);
      std::vector<std::size_t> shuffled = seq;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      std::vector<std::size_t> reversed(seq.rbegin(), seq.rend());
      for (const auto* order : {&seq, &shuffled, &reversed}) {
        if (std::abs(sequential(*order) - reference) > 1e-12) {
          failures.push_back("order dependence in sequential update");
          break;
        }
      }
      BeliefState small{0.4, mH, mL, {}};
      small.counts = {static_cast<std::uint32_t>(rep % 17), static_cast<std::uint32_t>(rep % 23),
                      static_cast<std::uint32_t>(rep % 11)};
      if (std::abs(posterior(small) - posterior_direct(small)) > 1e-9) failures.push_back("log/direct disagreement");
    }

    const BeliefPathSummary s = simulate_belief_paths(0.4, mL, {mH, mL}, 15, opt.sims, opt.seed);
    for (std::size_t r = 1; r < s.mean_path.size(); ++r) {
      if (s.mean_path[r] < s.mean_path[r - 1] - s.std_error_path[r]) {
        failures.push_back(fmt("mean Pr(L) decreases at round %.0f", static_cast<double>(r)));
        break;
      }
    }
    CheckResult r;
    r.pass = failures.empty();
    r.detail = failures.empty() ? fmt("%.0f sims per martingale case", static_cast<double>(opt.sims)) : failures.front();
    return r;
  });
}

CheckResult oracle_agreement_check(const SuiteOptions& opt, std::size_t points) {
  return timed("registry against switching oracle", [&] {
    const auto& dists = modeled_distributions();
    Rng rng = substream(opt.seed, {21});
    std::size_t bad = 0;
    std::string misses;
    for (std::size_t k = 0; k < points; ++k) {
      const Distribution dist = dists[static_cast<std::size_t>(uniform01(rng) * dists.size()) % dists.size()];
      const InfoMode info = bernoulli(rng, 0.5) ? InfoMode::NoOtherInfo : InfoMode::FullInfo;
      const Role role = kAllRoles[static_cast<std::size_t>(uniform01(rng) * 3) % 3];
      const InvestmentProfile profile = InvestmentProfile::from_index(static_cast<unsigned>(uniform01(rng) * 8) % 8);
      const double alpha = uniform01(rng);
      const double t = 1.0 - uniform01(rng);
      const AttractionScenario sc{dist, info};
      const RegionParams rp{alpha, t, 15};
      const double table = attraction_share(sc, role, profile, rp).share;
      const OracleEstimate est = mc_attraction_oracle(sc, role, profile, rp, opt.sims, mix64(opt.seed + 1000 + k));
      if (std::abs(est.mean - table) > 3.0 * est.std_error + 1e-9) {
        ++bad;
        misses += "; " + label(dist) + " " + std::string(to_string(info)) + " " + std::string(to_string(role)) + " " +
                  label(profile) + fmt(" alpha %.3f t %.3f: table %.4f", alpha, t, table) +
                  fmt(" oracle %.4f +- %.4f", est.mean, est.std_error);
      }
    }
    CheckResult r;
    r.pass = bad == 0;
    r.detail = fmt("%.0f of %.0f points outside 3 sigma", static_cast<double>(bad), static_cast<double>(points));
    r.detail += misses;
    return r;
  });
}

CheckResult registry_coverage_check() {
  return timed("registry coverage", [] {
    std::size_t missing = 0;
    std::size_t cells = 0;
    for (const Distribution& d : modeled_distributions()) {
      for (Role role : kAllRoles) {
        for (unsigned idx = 0; idx < 8; ++idx) {
          ++cells;
          try {
            attraction_cell(d, role, InvestmentProfile::from_index(idx));
          } catch (const UnmodeledCell&) {
            ++missing;
          }
        }
      }
    }
    CheckResult r;
    r.pass = missing == 0 && cells == registry_size();
    r.detail = fmt("%.0f cells enumerated, %.0f missing, registry holds %.0f", static_cast<double>(cells),
                   static_cast<double>(missing), static_cast<double>(registry_size()));
    return r;
  });
}

std::vector<CheckResult> condition_grid_details(std::size_t n) {
  const auto& specs = condition_registry();
  std::vector<CheckResult> out(specs.size());
  parallel_for(specs.size(), [&](std::size_t k) {
    const auto start = Clock::now();
    const BoundaryCheck b = grid_boundary_check(specs[k], {n, n});
    CheckResult& r = out[k];
    r.name = specs[k].name;
    r.pass = b.pass();
    r.detail = fmt("%.0f cells beyond one cell width", static_cast<double>(b.far_disagreements));
    if (!r.pass) r.detail += fmt(", worst at t %.3f alpha %.3f distance %.3f", b.worst_t, b.worst_alpha, b.worst_distance);
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  });
  return out;
}

CheckResult condition_grid_check(std::size_t n) {
  return timed("closed-form conditions against grid best responses", [&] {
    const auto details = condition_grid_details(n);
    std::size_t bad = 0;
    std::string names;
    for (const auto& d : details) {
      if (d.pass) continue;
      ++bad;
      if (!names.empty()) names += ' ';
      names += d.name;
    }
    CheckResult r;
    r.pass = bad == 0;
    r.detail = fmt("%.0f of %.0f conditions off by more than one cell", static_cast<double>(bad),
                   static_cast<double>(details.size()));
    if (bad) r.detail += ": " + names;
    return r;
  });
}

CheckResult stage_game_check(const SuiteOptions& opt, std::size_t draws) {
  return timed("closed-form incomes against simulated stage games", [&] {
    const MarketParams p = default_params();
    std::size_t cases = 0;
    std::string failures;
    for (MenuKind menu : {MenuKind::Pm, MenuKind::Pe, MenuKind::Ps}) {
      for (IncomeMode mode : {IncomeMode::TransparentHigh, IncomeMode::TransparentLow, IncomeMode::Obfuscated}) {
        for (bool invested : {false, true}) {
          if (mode == IncomeMode::Obfuscated && invested) continue;
          ++cases;
          const double expected = expected_consumer_income(menu, mode, invested, p);
          const PriceVector pv = price_vector(menu, p, invested);
          std::vector<double> pay(draws);
          const std::uint64_t key = static_cast<std::uint64_t>(menu) * 100 + static_cast<std::uint64_t>(mode) * 10 + invested;
          Rng rng = substream(opt.seed, {31, key});
          for (std::size_t i = 0; i < draws; ++i) {
            double k = mode == IncomeMode::TransparentHigh ? p.z : p.q;
            if (mode == IncomeMode::Obfuscated) k = bernoulli(rng, p.gamma) ? p.z : p.q;
            if (invested) k = p.k_inv;
            const Problem problem = draw_problem(p, rng);
            const Problem signal = draw_diagnosis(problem, k, rng);
            const Treatment tr = self_interested_treatment(pv, signal, p);
            pay[i] = realize_round(problem, tr, pv, invested, p).consumer_payoff;
          }
          const Moments m = moments(pay);
          if (std::abs(m.mean - expected) > 3.0 * m.se + 1e-9) {
            failures += std::string(failures.empty() ? "" : "; ") + std::string(to_string(menu)) + "/" +
                        std::string(to_string(mode)) + (invested ? "/invested" : "") +
                        fmt(" mean %.4f expected %.4f se %.4f", m.mean, expected, m.se);
          }
        }
      }
    }
    CheckResult r;
    r.pass = failures.empty();
    r.detail = failures.empty() ? fmt("%.0f menu and mode cases at %.0f draws", static_cast<double>(cases),
                                      static_cast<double>(draws))
                                : failures;
    return r;
  });
}

CheckResult abm_check(const SuiteOptions& opt) {
  return timed("simulator determinism and accounting identity", [&] {
    SessionConfig cfg;
    cfg.params = default_params();
    cfg.mode = InvestMode::Algorithm;
    cfg.experts = {expert_policy_from_string("AlwaysInvest(0.7)"), expert_policy_from_string("LAImitator(5)"),
                   expert_policy_from_string("OneShotRandomizer(0.5)")};
    cfg.consumers = {consumer_policy_from_string("BayesianSwitcher(0.9)"), consumer_policy_from_string("SafeSeeker"),
                     consumer_policy_from_string("Greedy")};
    cfg.seed = opt.seed;
    const std::size_t sessions = 400;  // 25 rounds each
    const auto a = run_batch(cfg, sessions);
    const auto b = run_batch(cfg, sessions);
    std::size_t rounds = 0;
    std::size_t mismatched = 0;
    double residual = 0.0;
    std::size_t overcharges = 0;
    for (std::size_t k = 0; k < sessions; ++k) {
      if (runlog_to_string(a[k]) != runlog_to_string(b[k])) ++mismatched;
      rounds += static_cast<std::size_t>(total_rounds(cfg));
      residual = std::max(residual, accounting_residual(a[k], cfg.params));
      overcharges += verifiability_violations(a[k]);
    }
    SessionConfig single = cfg;
    single.session_id = 3;
    if (runlog_to_string(run_session(single)) != runlog_to_string(a[3])) ++mismatched;
    CheckResult r;
    r.pass = mismatched == 0 && residual <= 1e-9 && overcharges == 0 && rounds >= 10000;
    r.detail = fmt("%.0f rounds, %.0f mismatched reruns, max residual %.3g", static_cast<double>(rounds),
                   static_cast<double>(mismatched), residual) +
               fmt(", %.0f verifiability violations", static_cast<double>(overcharges));
    return r;
  });
}

std::vector<std::string> suite_names() { return {"golden", "beliefs", "tables", "conditions", "market", "abm", "all"}; }

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  const bool all = name == "all";
  bool known = all;
  if (all || name == "golden") {
    known = true;
    for (auto& c : golden_checks()) out.push_back(c);
  }
  if (all || name == "beliefs") {
    known = true;
    out.push_back(belief_property_check(opt));
  }
  if (all || name == "tables") {
    known = true;
    out.push_back(registry_coverage_check());
    out.push_back(oracle_agreement_check(opt));
  }
  if (all || name == "conditions") {
    known = true;
    out.push_back(condition_grid_check());
  }
  if (all || name == "market") {
    known = true;
    out.push_back(stage_game_check(opt));
  }
  if (all || name == "abm") {
    known = true;
    out.push_back(abm_check(opt));
  }
  if (!known) throw std::invalid_argument("unknown suite: " + name);
  return out;
}

}  // namespace credence
