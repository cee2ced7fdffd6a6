#include "credence/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "credence/abm.hpp"
#include "credence/beliefs.hpp"
#include "credence/conditions.hpp"
#include "credence/equilibria.hpp"
#include "credence/metrics.hpp"
#include "credence/oneshot.hpp"
#include "credence/params.hpp"
#include "credence/table_io.hpp"
#include "credence/thresholds.hpp"
#include "credence/validation.hpp"
#include "json.hpp"

namespace credence::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 7;

struct Resolved {
  MarketParams params;
  std::uint64_t seed = kDefaultSeed;
  std::optional<json> session;
};

struct Context {
  const Invocation& inv;
  Resolved cfg;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> artifacts;
  json extra = json::object();

  fs::path dir() const { return fs::path(inv.output_dir); }

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(dir());
    write_text_file((dir() / name).string(), content);
    artifacts.push_back(name);
  }
};

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw UsageError("--grid expects NxM, got " + text);
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, x);
    const std::string b = text.substr(x + 1);
    const long long n = std::stoll(a, &used_a);
    const long long m = std::stoll(b, &used_b);
    if (used_a != a.size() || used_b != b.size() || n < 0 || m < 0) throw UsageError("");
    return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
  } catch (const std::exception&) {
    throw UsageError("--grid expects NxM with nonnegative integers, got " + text);
  }
}

Resolved resolve(const Invocation& inv) {
  Resolved r;
  r.params = default_params();
  if (inv.defaults_only) return r;
  if (!inv.config_path.empty()) {
    json doc;
    try {
      doc = json::parse(read_text_file(inv.config_path));
    } catch (const json::exception& e) {
      throw UsageError("config " + inv.config_path + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    if (!doc.is_object()) throw UsageError("config must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (it.key() == "params") {
        try {
          r.params = params_from_json(it.value().dump());
        } catch (const std::exception& e) {
          throw UsageError(std::string("config params: ") + e.what());
        }
      } else if (it.key() == "seed") {
        if (!it.value().is_number_unsigned()) throw UsageError("config seed must be a nonnegative integer");
        r.seed = it.value().get<std::uint64_t>();
      } else if (it.key() == "session") {
        r.session = it.value();
      } else {
        throw UsageError("unknown config key: " + it.key());
      }
    }
  }
  for (const std::string& kv : inv.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects key=value, got " + kv);
    try {
      apply_override(r.params, kv.substr(0, eq), kv.substr(eq + 1));
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  try {
    validate(r.params);
  } catch (const ParamError& e) {
    throw UsageError(std::string("invalid parameters: ") + e.what());
  }
  if (inv.seed) r.seed = *inv.seed;
  return r;
}

json manifest(const Context& ctx) {
  json m;
  m["tool"] = "credence";
  m["version"] = version();
  m["subcommand"] = ctx.inv.subcommand;
  m["seed"] = ctx.cfg.seed;
  m["config_path"] = ctx.inv.config_path;
  m["overrides"] = ctx.inv.overrides;
  if (ctx.inv.grid) m["grid"] = {ctx.inv.grid->first, ctx.inv.grid->second};
  if (ctx.inv.sims) m["sims"] = *ctx.inv.sims;
  m["params"] = json::parse(params_to_json(ctx.cfg.params));
  for (auto it = ctx.extra.begin(); it != ctx.extra.end(); ++it) m[it.key()] = it.value();
  m["artifacts"] = ctx.artifacts;
  return m;
}

json maybe(const MaybeValue& v) { return v ? json(*v) : json(nullptr); }

std::size_t sims_or(const Invocation& inv, std::size_t fallback) { return inv.sims ? *inv.sims : fallback; }

int cmd_params(Context& ctx) {
  const std::string text = params_to_json(ctx.cfg.params);
  ctx.out << text << '\n';
  ctx.write("params.json", text + "\n");
  return kExitOk;
}

int cmd_thresholds(Context& ctx) {
  const MarketParams& p = ctx.cfg.params;
  json doc;
  for (IncomeMode mode : {IncomeMode::TransparentHigh, IncomeMode::TransparentLow, IncomeMode::Obfuscated}) {
    const ThresholdSet t = price_thresholds(p, mode);
    doc["price_thresholds"][std::string(to_string(mode))] = {
        {"h_m", maybe(t.h_m)}, {"h_s", maybe(t.h_s)}, {"h_s_uses_delta_c", t.hs_used_delta_c}};
  }
  const BeliefBounds bb = belief_bounds(p);
  doc["belief_bounds"] = {{"gamma_m", maybe(bb.gamma_m)}, {"gamma_s", maybe(bb.gamma_s)}};
  doc["prop1_region_at_h"] = std::string(to_string(prop1_region(p.h, p)));
  json incomes;
  for (MenuKind k : {MenuKind::Pm, MenuKind::Pe, MenuKind::Ps}) {
    for (IncomeMode mode : {IncomeMode::TransparentHigh, IncomeMode::TransparentLow, IncomeMode::Obfuscated}) {
      incomes[std::string(to_string(k))][std::string(to_string(mode))] = expected_consumer_income(k, mode, false, p);
    }
    incomes[std::string(to_string(k))]["TransparentHigh_invested"] =
        expected_consumer_income(k, IncomeMode::TransparentHigh, true, p);
  }
  doc["consumer_incomes"] = incomes;
  const SignalingThresholds s0 = signaling_thresholds(p, 0.0, 0.0);
  const SignalingThresholds s1 = signaling_thresholds(p, p.gamma, 0.5);
  doc["signaling"] = {{"w_ninv_at_gamma_0", maybe(s0.w_ninv)},
                      {"w_ninv_first_principles_at_gamma_0", maybe(s0.w_ninv_first_principles)},
                      {"gamma_tilde", s1.gamma_tilde},
                      {"w", s1.w},
                      {"w_ninv", maybe(s1.w_ninv)},
                      {"w_ninv_first_principles", maybe(s1.w_ninv_first_principles)},
                      {"formulas_disagree", s1.formulas_disagree},
                      {"gamma_ninv", maybe(s1.gamma_ninv)},
                      {"r_bar", maybe(s1.r_bar)},
                      {"gamma_second_expert", maybe(s1.gamma_second_expert)}};
  doc["all_invest_w_threshold"] = maybe(all_invest_w_threshold(p, 10.0));
  ctx.write("thresholds.json", doc.dump(2) + "\n");
  const ThresholdSet obf = price_thresholds(p, IncomeMode::Obfuscated);
  ctx.out << "h_m_o = " << fmt6(obf.h_m) << '\n'
          << "h_s_o = " << fmt6(obf.h_s) << '\n'
          << "gamma_m = " << fmt6(bb.gamma_m) << '\n'
          << "gamma_s = " << fmt6(bb.gamma_s) << '\n'
          << "region(h = " << fmt6(p.h) << ") = " << to_string(prop1_region(p.h, p)) << '\n';
  return kExitOk;
}

int cmd_regions(Context& ctx) {
  const MarketParams& p = ctx.cfg.params;
  const std::size_t n = ctx.inv.grid ? ctx.inv.grid->first : 999;
  std::vector<double> hs;
  for (std::size_t i = 1; i <= n; ++i) hs.push_back(static_cast<double>(i) / static_cast<double>(n + 1));
  ctx.write("fig1_transparent.csv", region_scan_table(emit_region_scan(p, {1.0, 0.0, p.gamma}, hs)).str());
  const std::vector<double> beliefs{0.0, 0.1, 0.2, p.gamma, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  ctx.write("fig1_beliefs.csv", region_scan_table(emit_region_scan(p, beliefs, hs)).str());
  ctx.out << "wrote " << hs.size() << " h values per belief level\n";
  return kExitOk;
}

int cmd_beliefs(Context& ctx) {
  const MarketParams& p = ctx.cfg.params;
  const std::size_t sims = sims_or(ctx.inv, 10000);
  const int rounds = p.R;
  const ObsModel mH = honest_obs_model(p.h, p.z);
  const ObsModel mL = honest_obs_model(p.h, p.q);
  const ObsModel hqt = strategy_obs_model(Strategy::always_hqt(), p.h);
  CsvTable fig2 = belief_paths_header();
  CsvTable fig12 = belief_paths_header();
  json summary = json::array();
  for (double prior : {0.4, 0.2}) {
    const std::string label = "prior_" + fmt6(prior);
    const BeliefPathSummary s = simulate_belief_paths(prior, mL, {mH, mL}, rounds, sims, ctx.cfg.seed);
    append_belief_paths(fig2, label, s);
    const BeliefPathSummary s12 = simulate_belief_paths(prior, hqt, {mH, hqt}, rounds, sims, ctx.cfg.seed);
    append_belief_paths(fig12, label, s12);
    const FirstPassage fp = first_passage_r(prior, mL, {mH, mL}, ctx.inv.threshold, rounds, sims, ctx.cfg.seed);
    summary.push_back({{"prior_L", prior},
                       {"truth", "honest low-ability"},
                       {"threshold", ctx.inv.threshold},
                       {"final_mean_prL", s.mean_path.back()},
                       {"first_passage_mean", fp.mean},
                       {"first_passage_median", fp.median},
                       {"censored", fp.censored_count},
                       {"sentinel", fp.sentinel}});
    ctx.out << label << ": mean Pr(L) after " << rounds << " rounds = " << fmt6(s.mean_path.back())
            << ", median r = " << fmt6(fp.median) << '\n';
  }
  ctx.write("fig2_beliefs.csv", fig2.str());
  ctx.write("fig12_beliefs.csv", fig12.str());
  json doc{{"sims", sims},
           {"rounds", rounds},
           {"models",
            {{"high", {mH.a(), mH.b(), mH.c()}},
             {"low_honest", {mL.a(), mL.b(), mL.c()}},
             {"low_always_hqt", {hqt.a(), hqt.b(), hqt.c()}}}},
           {"scenarios", summary}};
  ctx.write("beliefs.json", doc.dump(2) + "\n");
  return kExitOk;
}

int cmd_rbar(Context& ctx) {
  const std::size_t nw = ctx.inv.grid ? ctx.inv.grid->first : 101;
  const std::size_t ng = ctx.inv.grid ? ctx.inv.grid->second : 101;
  const auto cells = emit_rbar_contour(ctx.cfg.params, linspace(0.0, 1.0, nw), linspace(0.0, 1.0, ng));
  ctx.write("fig5_rbar.csv", rbar_table(cells).str());
  ctx.out << "wrote " << cells.size() << " r_bar cells\n";
  return kExitOk;
}

GridSpec grid_spec(const Invocation& inv) {
  if (!inv.grid) return {200, 200};
  return {inv.grid->first, inv.grid->second};
}

std::string dist_tag(const Distribution& d) {
  return std::to_string(d.ha) + std::to_string(d.la_i) + std::to_string(d.la_j);
}

int cmd_equilibria(Context& ctx) {
  const GridSpec grid = grid_spec(ctx.inv);
  const int R = ctx.cfg.params.R;
  const AttractionScenario la3{{0, 3, 0}, InfoMode::FullInfo};
  ctx.write("fig7a_region.csv", region_grid_table(region_grid(la3, Analysis::Nash, grid, R), Analysis::Nash).str());
  for (const Distribution& d : modeled_distributions()) {
    for (Analysis a : {Analysis::Nash, Analysis::Mixed}) {
      for (InfoMode info : {InfoMode::FullInfo, InfoMode::NoOtherInfo}) {
        if (a == Analysis::Nash && info == InfoMode::NoOtherInfo) continue;
        const std::string name = "region_" + std::string(to_string(a)) + "_" +
                                 (info == InfoMode::FullInfo ? "full" : "noinf") + "_" + dist_tag(d) + ".csv";
        ctx.write(name, region_grid_table(region_grid({d, info}, a, grid, R), a).str());
      }
    }
  }
  ctx.write("conditions.json", conditions_json() + "\n");
  json checks = json::array();
  std::size_t failing = 0;
  const std::size_t n_alpha = grid.n_alpha;
  for (const ConditionSpec& c : condition_registry()) {
    const BoundaryCheck b = grid_boundary_check(c, grid, R);
    failing += !b.pass();
    checks.push_back({{"name", c.name},
                      {"cells", b.cells},
                      {"disagreements", b.disagreements},
                      {"beyond_one_cell", b.far_disagreements},
                      {"worst_t", b.worst_t},
                      {"worst_alpha", b.worst_alpha},
                      {"worst_distance", b.worst_distance},
                      {"pass", b.pass()}});
  }
  const auto onset = separation_onset(R);
  json doc{{"grid", {n_alpha, grid.n_t}},
           {"separation_onset_t", maybe(onset)},
           {"condition_checks", checks}};
  ctx.write("equilibria.json", doc.dump(2) + "\n");
  ctx.out << "separation onset t = " << fmt6(onset) << '\n'
          << "conditions off by more than one cell: " << failing << " of " << condition_registry().size() << '\n';
  return kExitOk;
}

int cmd_level1(Context& ctx) {
  const GridSpec grid = grid_spec(ctx.inv);
  const int R = ctx.cfg.params.R;
  for (const Distribution& d : modeled_distributions()) {
    for (InfoMode info : {InfoMode::FullInfo, InfoMode::NoOtherInfo}) {
      const std::string name =
          std::string("region_level1_") + (info == InfoMode::FullInfo ? "full" : "noinf") + "_" + dist_tag(d) + ".csv";
      ctx.write(name, region_grid_table(region_grid({d, info}, Analysis::Level1, grid, R), Analysis::Level1).str());
    }
  }
  ctx.out << "wrote level-1 grids for " << modeled_distributions().size() << " distributions\n";
  return kExitOk;
}

int cmd_oneshot(Context& ctx) {
  const OneShotSolution s = oneshot_mixed_solver();
  json doc{{"p", s.p},
           {"exact", s.exact},
           {"p_rational", std::to_string(s.p_num) + "/" + std::to_string(s.p_den)},
           {"payoff_diff_examples",
            {{{"p2", 0.3}, {"p3", 0.4}, {"diff", oneshot_payoff_diff(0.3, 0.4)}},
             {{"p2", 0.6}, {"p3", 0.6}, {"diff", oneshot_payoff_diff(0.6, 0.6)}},
             {{"p2", 0.5}, {"p3", 0.5}, {"diff", oneshot_payoff_diff(0.5, 0.5)}}}},
           {"pooled_income", oneshot_pooled_income(ctx.cfg.params)}};
  ctx.write("oneshot.json", doc.dump(2) + "\n");
  ctx.out << "p = " << fmt6(s.p) << '\n';
  return kExitOk;
}

SessionConfig default_session(const MarketParams& params, std::uint64_t seed) {
  SessionConfig cfg;
  cfg.params = params;
  cfg.mode = InvestMode::Algorithm;
  cfg.horizon = Horizon::Repeated;
  cfg.experts = {expert_policy_from_string("HASignaler"), expert_policy_from_string("LAImitator(3)"),
                 expert_policy_from_string("LAImitator(3)")};
  cfg.consumers = {consumer_policy_from_string("BayesianSwitcherHQT(0.9)"),
                   consumer_policy_from_string("BayesianSwitcherHQT(0.9)"),
                   consumer_policy_from_string("BayesianSwitcherHQT(0.9)")};
  cfg.seed = seed;
  return cfg;
}

int cmd_simulate(Context& ctx) {
  SessionConfig cfg = default_session(ctx.cfg.params, ctx.cfg.seed);
  if (ctx.cfg.session) {
    try {
      cfg = session_from_json(ctx.cfg.session->dump(), ctx.cfg.params);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    if (!ctx.cfg.session->contains("seed") || ctx.inv.seed) cfg.seed = ctx.cfg.seed;
  }
  const std::size_t sessions = sims_or(ctx.inv, 100);
  std::vector<RunLog> logs;
  try {
    logs = run_batch(cfg, sessions);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  std::ostringstream lines;
  for (const RunLog& log : logs) write_runlog(lines, log);
  ctx.write("runlog.jsonl", lines.str());
  const Metrics m = compute_metrics(logs, cfg.params);
  ctx.write("metrics.json", metrics_to_json(m) + "\n");
  ctx.extra["session"] = json::parse(session_to_json(cfg));
  ctx.extra["sessions"] = sessions;
  ctx.out << "sessions = " << sessions << ", entry rate = " << fmt6(m.market_entry_rate)
          << ", efficiency = " << fmt6(m.efficiency) << '\n';
  return kExitOk;
}

int cmd_validate(Context& ctx) {
  SuiteOptions opt;
  opt.sims = sims_or(ctx.inv, 10000);
  opt.seed = ctx.cfg.seed;
  std::vector<CheckResult> results;
  try {
    results = run_suite(ctx.inv.suite, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool ok = true;
  json doc = json::array();
  for (const CheckResult& r : results) {
    ok = ok && r.pass;
    ctx.out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    doc.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  ctx.write("validation.json", doc.dump(2) + "\n");
  ctx.extra["suite"] = ctx.inv.suite;
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

std::string version() { return CREDENCE_VERSION; }

Invocation parse_invocation(const std::vector<std::string>& args) {
  Invocation inv;
  CLI::App app{"Credence-goods market toolkit", "credence"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string grid_text;
  std::uint64_t seed = kDefaultSeed;
  std::size_t sims = 0;
  app.add_option("--config", inv.config_path, "JSON config with optional params, session and seed keys")
      ->check(CLI::ExistingFile);
  app.add_option("--out", inv.output_dir, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--set", inv.overrides, "parameter override key=value")->allow_extra_args(false);
  auto* grid_opt = app.add_option("--grid", grid_text, "grid size NxM");
  auto* sims_opt = app.add_option("--sims", sims, "Monte Carlo replications or simulated sessions");

  auto* params = app.add_subcommand("params", "print the resolved parameters");
  std::string params_mode;
  params->add_option("mode", params_mode, "\"default\" ignores config and overrides")->check(CLI::IsMember({"default"}));
  app.add_subcommand("thresholds", "price thresholds, belief bounds and signaling thresholds");
  app.add_subcommand("regions", "menu regions over h (fig1_*.csv)");
  auto* beliefs = app.add_subcommand("beliefs", "belief paths and first-passage rounds");
  beliefs->add_option("--threshold", inv.threshold, "Pr(L) at which the imitator counts as identified")
      ->check(CLI::Range(0.0, 1.0));
  app.add_subcommand("rbar", "retention bound over (w, gamma)");
  app.add_subcommand("equilibria", "pure-Nash and one-imitator-invests regions, condition checks");
  app.add_subcommand("level1", "level-1 choice regions");
  app.add_subcommand("oneshot", "one-shot coordination game");
  app.add_subcommand("simulate", "agent-based sessions");
  auto* validate_cmd = app.add_subcommand("validate", "property and oracle suites");
  validate_cmd->add_option("--suite", inv.suite, "suite name")->check(CLI::IsMember(suite_names()));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw InfoRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw InfoRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::CallForVersion&) {
    throw InfoRequested(version() + "\n");
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  inv.subcommand = app.get_subcommands().front()->get_name();
  inv.defaults_only = params_mode == "default";
  if (seed_opt->count()) inv.seed = seed;
  if (sims_opt->count()) {
    if (sims == 0) throw UsageError("--sims must be positive");
    inv.sims = sims;
  }
  if (grid_opt->count()) inv.grid = parse_grid(grid_text);
  return inv;
}

int dispatch(const Invocation& inv, std::ostream& out, std::ostream& err) {
  try {
    Context ctx{inv, resolve(inv), out, err, {}, json::object()};
    int code = kExitUsage;
    if (inv.subcommand == "params") code = cmd_params(ctx);
    else if (inv.subcommand == "thresholds") code = cmd_thresholds(ctx);
    else if (inv.subcommand == "regions") code = cmd_regions(ctx);
    else if (inv.subcommand == "beliefs") code = cmd_beliefs(ctx);
    else if (inv.subcommand == "rbar") code = cmd_rbar(ctx);
    else if (inv.subcommand == "equilibria") code = cmd_equilibria(ctx);
    else if (inv.subcommand == "level1") code = cmd_level1(ctx);
    else if (inv.subcommand == "oneshot") code = cmd_oneshot(ctx);
    else if (inv.subcommand == "simulate") code = cmd_simulate(ctx);
    else if (inv.subcommand == "validate") code = cmd_validate(ctx);
    else throw UsageError("unknown subcommand: " + inv.subcommand);
    ctx.artifacts.push_back("manifest.json");
    fs::create_directories(ctx.dir());
    write_text_file((ctx.dir() / "manifest.json").string(), manifest(ctx).dump(2) + "\n");
    return code;
  } catch (const UsageError& e) {
    err << "credence: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "credence: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_invocation(args);
  } catch (const InfoRequested& e) {
    out << e.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return dispatch(inv, out, err);
}

}  // namespace credence::cli
