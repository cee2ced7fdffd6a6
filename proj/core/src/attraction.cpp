#include "credence/attraction.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

namespace credence {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::HA: return "HA";
    case Role::LAi: return "LA_i";
    case Role::LAj: return "LA_j";
  }
  return "?";
}

std::string_view to_string(InfoMode mode) {
  return mode == InfoMode::FullInfo ? "FullInfo" : "NoOtherInfo";
}

Role role_from_string(std::string_view name) {
  if (name == "HA" || name == "ha") return Role::HA;
  if (name == "LA_i" || name == "LAi" || name == "la_i") return Role::LAi;
  if (name == "LA_j" || name == "LAj" || name == "la_j") return Role::LAj;
  throw std::invalid_argument("unknown role '" + std::string(name) + "'");
}

int Distribution::of(Role role) const {
  switch (role) {
    case Role::HA: return ha;
    case Role::LAi: return la_i;
    case Role::LAj: return la_j;
  }
  return 0;
}

std::string label(const Distribution& dist) {
  return std::to_string(dist.ha) + "-" + std::to_string(dist.la_i) + "-" + std::to_string(dist.la_j);
}

bool InvestmentProfile::of(Role role) const {
  switch (role) {
    case Role::HA: return ha;
    case Role::LAi: return la_i;
    case Role::LAj: return la_j;
  }
  return false;
}

InvestmentProfile InvestmentProfile::with(Role role, bool invest) const {
  InvestmentProfile p = *this;
  if (role == Role::HA) p.ha = invest;
  else if (role == Role::LAi) p.la_i = invest;
  else p.la_j = invest;
  return p;
}

InvestmentProfile InvestmentProfile::from_index(unsigned index) {
  return InvestmentProfile{(index & 4U) != 0, (index & 2U) != 0, (index & 1U) != 0};
}

unsigned InvestmentProfile::index() const { return (ha ? 4U : 0U) | (la_i ? 2U : 0U) | (la_j ? 1U : 0U); }

std::string label(const InvestmentProfile& p) {
  std::string s;
  s += p.ha ? 'I' : 'N';
  s += '-';
  s += p.la_i ? 'I' : 'N';
  s += '-';
  s += p.la_j ? 'I' : 'N';
  return s;
}

void validate(const RegionParams& rp) {
  if (!(rp.alpha >= 0.0 && rp.alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0,1]");
  if (!(rp.t > 0.0 && rp.t <= 1.0)) throw std::invalid_argument("t must lie in (0,1]");
  if (rp.R < 1) throw std::invalid_argument("R must be positive");
}

namespace {

using Key = std::tuple<int, int, int, int, unsigned>;

constexpr Weight kOne = Weight::One;
constexpr Weight kAlpha = Weight::Alpha;
constexpr Weight kNotAlpha = Weight::NotAlpha;
constexpr TimeFactor kWhole = TimeFactor::One;
constexpr TimeFactor kT = TimeFactor::T;
constexpr TimeFactor kRest = TimeFactor::Rest;
constexpr TimeFactor kSecond = TimeFactor::Second;
constexpr TimeFactor kVanish = TimeFactor::Vanish;

Key make_key(const Distribution& d, Role role, const InvestmentProfile& p) {
  return {d.ha, d.la_i, d.la_j, static_cast<int>(role), p.index()};
}

// Cells are keyed by three letters: the table owner's choice, then the row expert's, then the
// column expert's, each I (invest) or N (not invest).
void add_table(std::map<Key, Cell>& m, Distribution d, Role self, Role row, Role col,
               std::initializer_list<std::pair<const char*, Cell>> cells) {
  for (const auto& [code, cell] : cells) {
    InvestmentProfile p;
    p = p.with(self, code[0] == 'I').with(row, code[1] == 'I').with(col, code[2] == 'I');
    m[make_key(d, self, p)] = cell;
  }
}

std::map<Key, Cell> build_registry() {
  std::map<Key, Cell> m;
  add_table(m, {3, 0, 0}, Role::HA, Role::LAi, Role::LAj, {
      {"NII", {{1, 1, kOne, kWhole}}},
      {"NIN", {{1, 1, kNotAlpha, kWhole}}},
      {"NNI", {{1, 1, kNotAlpha, kWhole}}},
      {"NNN", {{1, 1, kOne, kWhole}}},
      {"III", {{1, 1, kOne, kWhole}}},
      {"IIN", {{1, 2, kOne, kRest}}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}, {1, 1, kNotAlpha, kVanish}}},
  });
  add_table(m, {3, 0, 0}, Role::LAi, Role::LAj, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {}},
      {"NNI", {{1, 2, kNotAlpha, kT}, {1, 2, kNotAlpha, kSecond}}},
      {"NNN", {}},
      {"III", {}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {3, 0, 0}, Role::LAj, Role::LAi, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {}},
      {"NNI", {{1, 2, kNotAlpha, kT}, {1, 2, kNotAlpha, kSecond}}},
      {"NNN", {}},
      {"III", {}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {0, 3, 0}, Role::HA, Role::LAi, Role::LAj, {
      {"NII", {{1, 1, kOne, kWhole}}},
      {"NIN", {{1, 2, kNotAlpha, kWhole}, {1, 2, kNotAlpha, kRest}}},
      {"NNI", {{1, 1, kNotAlpha, kRest}}},
      {"NNN", {{1, 2, kOne, kRest}, {1, 2, kOne, kVanish}}},
      {"III", {}},
      {"IIN", {{1, 2, kOne, kRest}}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}, {1, 1, kNotAlpha, kVanish}}},
  });
  add_table(m, {0, 3, 0}, Role::LAi, Role::LAj, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 1, kNotAlpha, kT}}},
      {"NNI", {{1, 1, kNotAlpha, kT}}},
      {"NNN", {{1, 1, kOne, kT}}},
      {"III", {{1, 1, kOne, kWhole}}},
      {"IIN", {}},
      {"INI", {{1, 1, kAlpha, kWhole}, {1, 2, kNotAlpha, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {0, 3, 0}, Role::LAj, Role::LAi, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 2, kNotAlpha, kT}}},
      {"NNI", {{1, 1, kNotAlpha, kSecond}}},
      {"NNN", {{1, 2, kOne, kSecond}}},
      {"III", {}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {2, 1, 0}, Role::HA, Role::LAi, Role::LAj, {
      {"NII", {{1, 1, kOne, kWhole}}},
      {"NIN", {{2, 3, kNotAlpha, kWhole}, {1, 3, kNotAlpha, kRest}}},
      {"NNI", {{2, 3, kNotAlpha, kWhole}, {1, 3, kNotAlpha, kRest}}},
      {"NNN", {{2, 3, kOne, kWhole}, {1, 3, kOne, kRest}}},
      {"III", {{2, 3, kOne, kWhole}}},
      {"IIN", {{1, 2, kOne, kRest}}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}, {1, 1, kNotAlpha, kVanish}}},
  });
  add_table(m, {2, 1, 0}, Role::LAi, Role::LAj, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 3, kNotAlpha, kT}}},
      {"NNI", {{2, 3, kNotAlpha, kT}, {1, 3, kNotAlpha, kSecond}}},
      {"NNN", {{1, 3, kOne, kT}}},
      {"III", {{1, 3, kOne, kWhole}}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {2, 1, 0}, Role::LAj, Role::LAi, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 6, kNotAlpha, kT}}},
      {"NNI", {{1, 3, kNotAlpha, kT}, {2, 3, kNotAlpha, kSecond}}},
      {"NNN", {{1, 6, kOne, kSecond}}},
      {"III", {}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {1, 2, 0}, Role::HA, Role::LAi, Role::LAj, {
      {"NII", {{1, 1, kOne, kWhole}}},
      {"NIN", {{2, 3, kNotAlpha, kWhole}, {1, 3, kNotAlpha, kRest}}},
      {"NNI", {{1, 3, kNotAlpha, kWhole}, {2, 3, kNotAlpha, kRest}}},
      {"NNN", {{1, 3, kOne, kWhole}, {1, 3, kOne, kRest}, {1, 3, kOne, kVanish}}},
      {"III", {{1, 3, kOne, kWhole}}},
      {"IIN", {{1, 2, kOne, kRest}}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {1, 2, 0}, Role::LAi, Role::LAj, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{2, 3, kNotAlpha, kT}}},
      {"NNI", {{2, 3, kNotAlpha, kT}, {1, 6, kNotAlpha, kT}, {1, 6, kNotAlpha, kSecond}}},
      {"NNN", {{2, 3, kOne, kT}}},
      {"III", {{2, 3, kOne, kWhole}}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {1, 2, 0}, Role::LAj, Role::LAi, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 3, kNotAlpha, kT}}},
      {"NNI", {{1, 6, kNotAlpha, kT}, {5, 6, kNotAlpha, kSecond}}},
      {"NNN", {{1, 3, kOne, kT}}},
      {"III", {}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {0, 2, 1}, Role::HA, Role::LAj, Role::LAi, {
      {"NII", {{1, 1, kOne, kWhole}}},
      {"NIN", {{1, 6, kNotAlpha, kWhole}, {5, 6, kNotAlpha, kRest}}},
      {"NNI", {{1, 3, kNotAlpha, kWhole}, {2, 3, kNotAlpha, kRest}}},
      {"NNN", {{1, 2, kOne, kRest}, {1, 2, kOne, kVanish}}},
      {"III", {}},
      {"IIN", {{1, 2, kOne, kRest}}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}, {1, 1, kNotAlpha, kVanish}}},
  });
  add_table(m, {0, 2, 1}, Role::LAi, Role::LAj, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{5, 6, kNotAlpha, kT}}},
      {"NNI", {{2, 3, kNotAlpha, kT}, {1, 3, kNotAlpha, kSecond}}},
      {"NNN", {{2, 3, kOne, kT}, {1, 6, kOne, kSecond}}},
      {"III", {{2, 3, kOne, kWhole}}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {0, 2, 1}, Role::LAj, Role::LAi, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 3, kNotAlpha, kT}, {1, 3, kNotAlpha, kSecond}}},
      {"NNI", {{1, 3, kNotAlpha, kT}, {2, 3, kNotAlpha, kSecond}}},
      {"NNN", {{1, 3, kOne, kT}, {1, 3, kOne, kSecond}}},
      {"III", {{1, 3, kOne, kWhole}}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {1, 1, 1}, Role::HA, Role::LAi, Role::LAj, {
      {"NII", {{1, 1, kOne, kWhole}}},
      {"NIN", {{1, 3, kNotAlpha, kWhole}, {2, 3, kNotAlpha, kRest}}},
      {"NNI", {{1, 3, kNotAlpha, kWhole}, {2, 3, kNotAlpha, kRest}}},
      {"NNN", {{1, 3, kOne, kWhole}, {1, 3, kOne, kRest}, {1, 3, kOne, kVanish}}},
      {"III", {{1, 3, kOne, kWhole}}},
      {"IIN", {{1, 2, kOne, kRest}}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {1, 1, 1}, Role::LAi, Role::LAj, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 2, kNotAlpha, kT}}},
      {"NNI", {{1, 2, kNotAlpha, kT}, {1, 2, kNotAlpha, kSecond}}},
      {"NNN", {{1, 3, kOne, kT}, {1, 6, kOne, kSecond}}},
      {"III", {{1, 3, kOne, kWhole}}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  add_table(m, {1, 1, 1}, Role::LAj, Role::LAi, Role::HA, {
      {"NII", {{1, 1, kOne, kT}}},
      {"NIN", {{1, 2, kNotAlpha, kT}}},
      {"NNI", {{1, 2, kNotAlpha, kT}, {1, 2, kNotAlpha, kSecond}}},
      {"NNN", {{1, 3, kOne, kT}, {1, 6, kOne, kSecond}}},
      {"III", {{1, 3, kOne, kWhole}}},
      {"IIN", {}},
      {"INI", {{1, 2, kOne, kRest}}},
      {"INN", {{1, 1, kAlpha, kWhole}}},
  });
  return m;
}

const std::map<Key, Cell>& registry() {
  static const std::map<Key, Cell> m = build_registry();
  return m;
}

double time_factor(TimeFactor f, double t, bool& clamped) {
  switch (f) {
    case TimeFactor::One: return 1.0;
    case TimeFactor::T: return t;
    case TimeFactor::Rest: return 1.0 - t;
    case TimeFactor::Second: return t <= 0.5 ? t : 1.0 - t;
    case TimeFactor::Vanish: {
      const double raw = 1.0 - 2.0 * t;
      if (raw < 0.0) {
        clamped = true;
        return 0.0;
      }
      return raw;
    }
  }
  return 0.0;
}

// Canonical labelling: LA_i is the low-ability expert with weakly more consumers.
// Expert A carries the LA_i investment flag of `base`, expert B the LA_j flag.
InfoState canonical_state(int x_ha, int x_a, int x_b, const InvestmentProfile& base) {
  InfoState s;
  const bool a_first = x_a >= x_b;
  s.dist = a_first ? Distribution{x_ha, x_a, x_b} : Distribution{x_ha, x_b, x_a};
  s.profile = a_first ? base : InvestmentProfile{base.ha, base.la_j, base.la_i};
  return s;
}

}  // namespace

const std::vector<Distribution>& modeled_distributions() {
  static const std::vector<Distribution> all{{3, 0, 0}, {2, 1, 0}, {1, 2, 0}, {1, 1, 1}, {0, 3, 0}, {0, 2, 1}};
  return all;
}

bool is_modeled(const Distribution& dist) {
  const auto& all = modeled_distributions();
  return std::find(all.begin(), all.end(), dist) != all.end();
}

const Cell& attraction_cell(const Distribution& dist, Role role, const InvestmentProfile& profile) {
  auto it = registry().find(make_key(dist, role, profile));
  if (it == registry().end()) {
    throw UnmodeledCell("no payoff table covers distribution " + label(dist) + ", role " +
                        std::string(to_string(role)) + ", profile " + label(profile));
  }
  return it->second;
}

std::size_t registry_size() { return registry().size(); }

AttractionValue evaluate_cell(const Cell& cell, const RegionParams& rp) {
  AttractionValue out;
  for (const Term& term : cell) {
    double w = 1.0;
    if (term.weight == Weight::Alpha) w = rp.alpha;
    else if (term.weight == Weight::NotAlpha) w = 1.0 - rp.alpha;
    out.share += static_cast<double>(term.num) / term.den * w * time_factor(term.factor, rp.t, out.clamped);
  }
  if (out.share < 0.0) {
    out.share = 0.0;
    out.clamped = true;
  } else if (out.share > 1.0) {
    out.share = 1.0;
    out.clamped = true;
  }
  return out;
}

std::vector<InfoState> unobserved_states(const Distribution& dist, Role role, const InvestmentProfile& profile) {
  std::vector<InfoState> states;
  const int own = dist.of(role);
  const int others = 3 - own;
  if (role == Role::HA) {
    for (int x_a = others; x_a >= 0; --x_a) {
      InfoState s = canonical_state(own, x_a, others - x_a, profile);
      s.role = Role::HA;
      states.push_back(s);
    }
    return states;
  }
  const Role other = role == Role::LAi ? Role::LAj : Role::LAi;
  const bool self_inv = profile.of(role);
  const bool other_inv = profile.of(other);
  for (int x_ha = others; x_ha >= 0; --x_ha) {
    const int x_other = others - x_ha;
    InfoState s;
    const bool self_first = own >= x_other;
    s.dist = self_first ? Distribution{x_ha, own, x_other} : Distribution{x_ha, x_other, own};
    s.role = self_first ? Role::LAi : Role::LAj;
    s.profile = self_first ? InvestmentProfile{profile.ha, self_inv, other_inv}
                           : InvestmentProfile{profile.ha, other_inv, self_inv};
    states.push_back(s);
  }
  return states;
}

AttractionValue attraction_share(const AttractionScenario& scenario, Role role, const InvestmentProfile& profile,
                                 const RegionParams& rp) {
  validate(rp);
  if (scenario.info == InfoMode::FullInfo) {
    return evaluate_cell(attraction_cell(scenario.dist, role, profile), rp);
  }
  const int own = scenario.dist.of(role);
  if (own < 0 || own > 3) throw UnmodeledCell("consumer stock must lie in 0..3");
  AttractionValue out;
  const auto states = unobserved_states(scenario.dist, role, profile);
  for (const InfoState& s : states) {
    AttractionValue v = evaluate_cell(attraction_cell(s.dist, s.role, s.profile), rp);
    out.share += v.share;
    out.clamped = out.clamped || v.clamped;
  }
  out.share /= static_cast<double>(states.size());
  return out;
}

std::string describe(const Cell& cell) {
  if (cell.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const Term& term = cell[i];
    if (i) s += " + ";
    if (term.den == 1) s += std::to_string(term.num);
    else s += std::to_string(term.num) + "/" + std::to_string(term.den);
    if (term.weight == Weight::Alpha) s += "*a";
    else if (term.weight == Weight::NotAlpha) s += "*(1-a)";
    switch (term.factor) {
      case TimeFactor::One: break;
      case TimeFactor::T: s += "*t"; break;
      case TimeFactor::Rest: s += "*(1-t)"; break;
      case TimeFactor::Second: s += "*second(t)"; break;
      case TimeFactor::Vanish: s += "*max(0,1-2t)"; break;
    }
  }
  return s;
}

}  // namespace credence
