#include "credence/conditions.hpp"

#include <cmath>
#include "json.hpp"

namespace credence {

double PolyRatio::operator()(double t) const {
  auto horner = [t](const std::vector<double>& c) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
    return acc;
  };
  return horner(num) / horner(den);
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::GE: return "GE";
    case Direction::GT: return "GT";
    case Direction::LE: return "LE";
    case Direction::LT: return "LT";
  }
  return "?";
}

double ConditionSpec::bound(double t) const { return t < 0.5 ? branch_lo(t) : branch_hi(t); }

namespace {

using Poly = std::vector<double>;

PolyRatio ratio(Poly num, Poly den = {1.0}) { return {std::move(num), std::move(den)}; }

Poly mul(std::initializer_list<Poly> factors) {
  Poly out{1.0};
  for (const Poly& f : factors) out = poly_mul(out, f);
  return out;
}

constexpr bool I = true;
constexpr bool N = false;

struct Builder {
  std::vector<ConditionSpec> specs;
  std::string group;
  Analysis analysis = Analysis::Nash;
  InfoMode info = InfoMode::FullInfo;

  void add(const std::string& local, Distribution dist, Role role, InvestmentProfile others, Direction dir,
           PolyRatio lo, std::optional<PolyRatio> hi = std::nullopt) {
    ConditionSpec c;
    c.name = group + "." + local;
    c.group = group;
    c.analysis = analysis;
    c.info = info;
    c.dist = dist;
    c.role = role;
    c.others = others.with(role, false);
    c.describes_invest = dir == Direction::GE || dir == Direction::GT;
    c.direction = dir;
    c.branch_lo = lo;
    c.branch_hi = hi ? *hi : lo;
    specs.push_back(std::move(c));
  }
};

std::vector<ConditionSpec> build_registry() {
  using D = Direction;
  const Distribution la3{0, 3, 0}, ha1{1, 2, 0}, ha0{0, 2, 1}, eq{1, 1, 1}, ha2{2, 1, 0}, ha3{3, 0, 0};
  const InvestmentProfile none{N, N, N};
  const InvestmentProfile ha_inv{I, N, N};
  const InvestmentProfile lai_inv{N, I, N};
  const InvestmentProfile laj_inv{N, N, I};
  const PolyRatio detect = ratio({-0.5, 1.5}, {0.0, 1.0});
  Builder b;

  // Separation: only the high-ability expert invests.
  b.analysis = Analysis::Nash;
  b.group = "sep_la3";
  b.add("ha_0_inv", la3, Role::HA, none, D::GE, ratio({0.25}), ratio({0.5, -0.5}));
  b.add("la_0_ninv", la3, Role::LAj, ha_inv, D::LE, detect, ratio({0.5}));
  b.add("la_3_ninv", la3, Role::LAi, ha_inv, D::LE, ratio({-1.0, 3.0}, {1.0, 3.0}));
  b.group = "sep_ha1";
  b.add("ha_1_inv", ha1, Role::HA, none, D::GT, ratio({1.0, -1.0}), ratio({2.0, -1.0}, {3.0}));
  b.add("la_20_ninv", ha1, Role::LAi, ha_inv, D::LT, detect, ratio({-2.0, 7.0}, {1.0, 4.0}));
  b.add("la_02_ninv", ha1, Role::LAj, ha_inv, D::LT, detect, ratio({0.5, 0.5}, {2.0, -1.0}));
  b.group = "sep_ha0";
  b.add("ha_0_inv", ha0, Role::HA, none, D::GT, ratio({1.0, -1.5}), ratio({0.5, -0.5}));
  b.add("la_21_ninv", ha0, Role::LAi, ha_inv, D::LT, detect, ratio({-0.5, 2.5}, {1.0, 1.0}));
  b.add("la_12_ninv", ha0, Role::LAj, ha_inv, D::LT, detect, ratio({0.5, 0.5}, {2.0, -1.0}));
  b.group = "sep_eq";
  b.add("ha_1_inv", eq, Role::HA, none, D::GT, ratio({1.0, -1.0}), ratio({2.0, -1.0}, {3.0}));
  b.add("la_eq_ninv", eq, Role::LAi, ha_inv, D::LT, ratio({0.0, 1.0}));

  // One low-ability expert invests, every distribution observed.
  b.group = "mixed_full";
  b.analysis = Analysis::Mixed;
  b.add("ha0_la21_ninv", ha0, Role::HA, lai_inv, D::LT, ratio({1.5, -0.5}, {3.0, -2.0}));
  b.add("la2_ha0_inv", ha0, Role::LAi, none, D::GT, ratio({0.0, 5.0 / 6.0}), ratio({0.5, 1.5}, {3.0}));
  b.add("ha0_la12_ninv", ha0, Role::HA, laj_inv, D::LT, ratio({3.0, -2.0}, {6.0, -5.0}));
  b.add("la1_ha0_inv", ha0, Role::LAj, none, D::GT, ratio({0.0, 2.0 / 3.0}), ratio({1.0 / 3.0}));
  b.add("ha0_la3la0_ninv", la3, Role::HA, lai_inv, D::LT, ratio({1.0}, {2.0, -1.0}));
  b.add("la3_ha0la0_inv", la3, Role::LAi, none, D::GT, ratio({0.0, 1.0}));
  b.add("ha0_la0la3_ninv", la3, Role::HA, laj_inv, D::LT, ratio({0.5}));
  b.add("la0_ha0la3_inv", la3, Role::LAj, none, D::GT, ratio({0.5, -0.5}));
  b.add("ha1_la1la1_ninv", eq, Role::HA, lai_inv, D::LT, ratio({1.5, -0.5}, {3.0, -2.0}));
  b.add("la1_ha1la1_inv", eq, Role::LAi, none, D::GT, ratio({1.0, 1.0}, {6.0}));
  b.add("ha1_la2la0_ninv", ha1, Role::HA, lai_inv, D::LT, ratio({1.5, 0.5}, {3.0, -1.0}));
  b.add("la2_ha1la0_inv", ha1, Role::LAi, none, D::GT, ratio({0.0, 2.0 / 3.0}));
  b.add("ha1_la0la2_ninv", ha1, Role::HA, laj_inv, D::LT, ratio({1.5, -0.5}, {3.0, -2.0}));
  b.add("la0_ha1la2_inv", ha1, Role::LAj, none, D::GT, ratio({0.0, 1.0 / 3.0}));
  b.add("ha2_la1la0_ninv", ha2, Role::HA, lai_inv, D::LT, ratio({1.5, 0.5}, {3.0, -1.0}));
  b.add("ha2_la0la1_ninv", ha2, Role::HA, laj_inv, D::LT, ratio({1.5, 0.5}, {3.0, -1.0}));
  b.add("la1_ha2la0_inv", ha2, Role::LAi, none, D::GT, ratio({0.0, 1.0 / 3.0}));
  b.add("la0_ha2la1_inv", ha2, Role::LAj, none, D::GT, ratio({0.0, 1.0 / 6.0}), ratio({1.0, -1.0}, {6.0}));

  // One low-ability expert invests, experts see only their own stock.
  b.group = "mixed_noinf";
  b.info = InfoMode::NoOtherInfo;
  b.add("ha0_ninv", la3, Role::HA, lai_inv, D::LT,
        ratio({144.0, -252.0, 138.0, -23.0}, mul({{8.0}, {3.0, -2.0}, {6.0, -5.0}, {2.0, -1.0}})));
  b.add("la2_inv", ha1, Role::LAi, none, D::GT, ratio({9.0, 18.0, -5.0}, {36.0, -12.0}),
        ratio({12.0, 11.0, -3.0}, {36.0, -12.0}));
  b.add("la1_inv", ha2, Role::LAi, none, D::GT, ratio({1.0, 7.0}, {18.0}), ratio({1.0, 1.0}, {6.0}));
  b.add("la3_inv", la3, Role::LAi, none, D::GT, ratio({0.0, 1.0}));
  b.add("la0_inv", ha3, Role::LAi, none, D::GT, ratio({18.0, -15.0, 4.0}, {54.0, -36.0}),
        ratio({21.0, -23.0, 8.0}, {54.0, -36.0}));
  b.add("ha1_inv", ha1, Role::HA, lai_inv, D::LT, ratio({9.0, -5.0}, mul({{2.0}, {3.0, -2.0}, {3.0, -1.0}})));
  b.add("ha2_ninv", ha2, Role::HA, lai_inv, D::LT, ratio({1.5, 0.5}, {3.0, -1.0}));

  // Level-1 best responses to uniformly randomizing opponents.
  b.analysis = Analysis::Level1;
  b.info = InfoMode::FullInfo;
  b.group = "level1_full";
  b.add("ha3_ninv", ha3, Role::HA, none, D::LE, ratio({1.0, 3.0}, {2.0, 2.0}), ratio({2.0, 1.0}, {3.0}));
  b.add("ha3_la0_inv", ha3, Role::LAi, none, D::GE, ratio({-1.0, 5.0}, {2.0, 2.0}), ratio({0.0, 1.0}));
  b.add("ha2_ninv", ha2, Role::HA, none, D::LE, ratio({2.0, 3.0}, {3.0, 2.0}), ratio({7.0}, {9.0, -2.0}));
  b.add("ha2_la1_inv", ha2, Role::LAi, none, D::GE, ratio({-5.0, 19.0}, {6.0, 8.0}),
        ratio({-3.0, 15.0}, {8.0, 4.0}));
  b.add("ha2_la0_inv", ha2, Role::LAj, none, D::GE, ratio({-3.0, 17.0}, {6.0, 7.0}),
        ratio({2.0, 7.0}, {10.0, -1.0}));
  b.add("ha1_la2la0_ninv", ha1, Role::HA, none, D::LE, ratio({8.0, -3.0}, {9.0, -3.0}),
        ratio({7.0, -1.0}, {9.0, -3.0}));
  b.add("la2_ha1la0_inv", ha1, Role::LAi, none, D::GE, ratio({-7.0, 23.0}, {6.0, 10.0}),
        ratio({-6.0, 21.0}, {7.0, 8.0}));
  b.add("la0_ha1la2_inv", ha1, Role::LAj, none, D::GE, ratio({-3.0, 19.0}, {6.0, 8.0}),
        ratio({2.0, 9.0}, {11.0, -2.0}));
  b.add("ha1_la1_ninv", eq, Role::HA, none, D::LE, ratio({8.0, -4.0}, {9.0, -4.0}), ratio({7.0, -2.0}, {9.0, -4.0}));
  b.add("la1_ha1_inv", eq, Role::LAi, none, D::GE, ratio({-1.0, 13.0}, {9.0, 3.0}));
  b.add("ha0_la3_ninv", la3, Role::HA, none, D::LE, ratio({4.0}, {4.0, 1.0}), ratio({5.0, -2.0}, {6.0, -3.0}));
  b.add("la0_la3_inv", la3, Role::LAj, none, D::GE, ratio({2.0, 1.0}, {4.0, -1.0}));
  b.add("la3_inv", la3, Role::LAi, none, D::GE, ratio({-3.0, 9.0}, {3.0, 5.0}));
  b.add("ha0_la2la1_ninv", ha0, Role::HA, none, D::LE, ratio({8.0, -4.0}, {9.0, -4.0}),
        ratio({7.0, -2.0}, {9.0, -4.0}));
  b.add("la1_ha0la2_inv", ha0, Role::LAj, none, D::GE, ratio({3.0, 7.0}, {12.0, -2.0}));
  b.add("la2_ha0la1_inv", ha0, Role::LAi, none, D::GE, ratio({-4.0, 19.0}, {8.0, 7.0}));

  b.group = "level1_noinf";
  b.info = InfoMode::NoOtherInfo;
  b.add("ha3_ninv", ha3, Role::HA, none, D::LE, ratio({1.0, 3.0}, {2.0, 2.0}), ratio({2.0, 1.0}, {3.0}));
  b.add("la0_inv", ha3, Role::LAi, none, D::GE,
        ratio({-144.0, 1062.0, 2786.0, 1257.0, -353.0}, mul({{8.0}, {1.0, 1.0}, {3.0, 4.0}, {4.0, -1.0}, {6.0, 7.0}})),
        ratio({194.0, 545.0, -257.0, 32.0, -1.0}, mul({{2.0}, {10.0, -1.0}, {11.0, -2.0}, {4.0, -1.0}})));
  b.add("ha2_ninv", ha2, Role::HA, none, D::LE, ratio({2.0, 3.0}, {3.0, 2.0}), ratio({7.0}, {9.0, -2.0}));
  b.add("la1_inv", ha2, Role::LAi, none, D::GE,
        ratio({-225.0, 1731.0, 1091.0, -77.0}, mul({{18.0}, {3.0, 4.0}, {3.0, 1.0}, {6.0, -1.0}})),
        ratio({-102.0, 1733.0, 584.0, -55.0}, mul({{36.0}, {2.0, 1.0}, {3.0, 1.0}, {6.0, -1.0}})));
  b.add("ha1_ninv", ha1, Role::HA, none, D::LE, ratio({144.0, -119.0, 24.0}, mul({{6.0}, {3.0, -1.0}, {9.0, -4.0}})),
        ratio({63.0, -38.0, 5.0}, mul({{3.0}, {3.0, -1.0}, {9.0, -4.0}})));
  b.add("la2_inv", ha1, Role::LAi, none, D::GE, ratio({-80.0, 209.0, 351.0}, mul({{4.0}, {3.0, 5.0}, {8.0, 7.0}})),
        ratio({-76.0, 227.0, 299.0}, mul({{2.0}, {7.0, 8.0}, {8.0, 7.0}})));
  b.add("ha0_ninv", la3, Role::HA, none, D::LE, ratio({34.0, -12.0, -2.0}, mul({{9.0, -4.0}, {4.0, 1.0}})),
        ratio({87.0, -71.0, 14.0}, mul({{6.0}, {2.0, -1.0}, {9.0, -4.0}})));
  b.add("la3_inv", la3, Role::LAi, none, D::GE, ratio({-3.0, 9.0}, {3.0, 5.0}));
  return b.specs;
}

bool compare(double alpha, Direction dir, double bound) {
  switch (dir) {
    case Direction::GE: return alpha >= bound;
    case Direction::GT: return alpha > bound;
    case Direction::LE: return alpha <= bound;
    case Direction::LT: return alpha < bound;
  }
  return false;
}

nlohmann::ordered_json poly_json(const PolyRatio& p) {
  return {{"num", p.num}, {"den", p.den}};
}

}  // namespace

const std::vector<ConditionSpec>& condition_registry() {
  static const std::vector<ConditionSpec> registry = build_registry();
  return registry;
}

const ConditionSpec& find_condition(std::string_view name) {
  for (const ConditionSpec& c : condition_registry())
    if (c.name == name) return c;
  throw UnknownCondition("unknown condition: " + std::string(name));
}

bool closed_form_check(const ConditionSpec& cond, const RegionParams& rp) {
  validate(rp);
  return compare(rp.alpha, cond.direction, cond.bound(rp.t));
}

double condition_advantage(const ConditionSpec& cond, const RegionParams& rp) {
  const AttractionScenario scenario{cond.dist, cond.info};
  if (cond.analysis == Analysis::Level1) return level1_advantage(scenario, cond.role, rp);
  return invest_advantage(scenario, cond.role, cond.others, rp);
}

bool best_response_holds(const ConditionSpec& cond, const RegionParams& rp) {
  constexpr double kTie = 1e-12;
  const double d = condition_advantage(cond, rp);
  return cond.describes_invest ? d >= -kTie : d <= kTie;
}

std::optional<double> registry_root(const ConditionSpec& cond, double t, int R) {
  return alpha_root([&](double alpha) { return condition_advantage(cond, {alpha, t, R}); });
}

BoundaryCheck grid_boundary_check(const ConditionSpec& cond, const GridSpec& grid, int R) {
  BoundaryCheck out;
  out.name = cond.name;
  const double cell = grid.n_alpha > 1 ? 1.0 / static_cast<double>(grid.n_alpha - 1) : 1.0;
  for (std::size_t j = 1; j <= grid.n_t; ++j) {
    const double t = grid_t(grid, j);
    const double bound = cond.bound(t);
    for (std::size_t i = 0; i < grid.n_alpha; ++i) {
      const double alpha = grid_alpha(grid, i);
      const RegionParams rp{alpha, t, R};
      ++out.cells;
      if (best_response_holds(cond, rp) == closed_form_check(cond, rp)) continue;
      ++out.disagreements;
      const double distance = std::isfinite(bound) ? std::abs(alpha - bound) : 1.0;
      if (distance > cell + 1e-12) {
        ++out.far_disagreements;
        if (distance > out.worst_distance) {
          out.worst_distance = distance;
          out.worst_t = t;
          out.worst_alpha = alpha;
        }
      }
    }
  }
  return out;
}

std::string conditions_json(int indent) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const ConditionSpec& c : condition_registry()) {
    doc.push_back({{"name", c.name},
                   {"group", c.group},
                   {"analysis", std::string(to_string(c.analysis))},
                   {"info", std::string(to_string(c.info))},
                   {"distribution", label(c.dist)},
                   {"role", std::string(to_string(c.role))},
                   {"others", label(c.others)},
                   {"choice", c.describes_invest ? "invest" : "not_invest"},
                   {"direction", std::string(to_string(c.direction))},
                   {"branch_split", 0.5},
                   {"branch_lo", poly_json(c.branch_lo)},
                   {"branch_hi", poly_json(c.branch_hi)}});
  }
  return doc.dump(indent);
}

}  // namespace credence
