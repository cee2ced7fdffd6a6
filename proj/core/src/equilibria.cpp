#include "credence/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "credence/rng.hpp"

namespace credence {

namespace {

constexpr double kTie = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool empty() const { return lo > hi; }
};

// Alphas in [0,1] where d0 + (d1 - d0) alpha has the sign requested by `invest`.
Interval alpha_interval(double d0, double d1, bool invest) {
  const double slope = d1 - d0;
  const double s = invest ? 1.0 : -1.0;
  const double a = s * d0;
  const double b = s * slope;
  // a + b alpha >= 0
  if (std::abs(b) <= kTie) return a >= -kTie ? Interval{} : Interval{1.0, 0.0};
  const double root = -a / b;
  if (b > 0) return {std::max(0.0, root), 1.0};
  return {0.0, std::min(1.0, root)};
}

bool separation_feasible(double t, int R) {
  const AttractionScenario scenario{{0, 3, 0}, InfoMode::FullInfo};
  const InvestmentProfile target{true, false, false};
  Interval acc;
  for (Role role : kAllRoles) {
    auto d = [&](double alpha) { return invest_advantage(scenario, role, target, {alpha, t, R}); };
    const Interval iv = alpha_interval(d(0.0), d(1.0), target.of(role));
    acc.lo = std::max(acc.lo, iv.lo);
    acc.hi = std::min(acc.hi, iv.hi);
  }
  return !acc.empty();
}

std::string join_labels(const std::vector<NashProfile>& profiles) {
  if (profiles.empty()) return "none";
  std::string out;
  for (const auto& p : profiles) {
    if (!out.empty()) out += ';';
    out += label(p.profile);
  }
  return out;
}

}  // namespace

std::string_view to_string(Analysis analysis) {
  switch (analysis) {
    case Analysis::Nash: return "nash";
    case Analysis::Mixed: return "mixed";
    case Analysis::Level1: return "level1";
  }
  return "?";
}

std::string_view to_string(Choice choice) {
  switch (choice) {
    case Choice::Invest: return "Invest";
    case Choice::NotInvest: return "NotInvest";
    case Choice::Indifferent: return "Indifferent";
  }
  return "?";
}

Analysis analysis_from_string(std::string_view name) {
  if (name == "nash") return Analysis::Nash;
  if (name == "mixed") return Analysis::Mixed;
  if (name == "level1") return Analysis::Level1;
  throw std::invalid_argument("unknown analysis: " + std::string(name));
}

double invest_advantage(const AttractionScenario& scenario, Role role, const InvestmentProfile& others,
                        const RegionParams& rp) {
  return attraction_share(scenario, role, others.with(role, true), rp).share -
         attraction_share(scenario, role, others.with(role, false), rp).share;
}

double level1_advantage(const AttractionScenario& scenario, Role role, const RegionParams& rp) {
  double total = 0.0;
  for (unsigned index = 0; index < 8; ++index) {
    const InvestmentProfile p = InvestmentProfile::from_index(index);
    if (p.of(role)) continue;
    total += invest_advantage(scenario, role, p, rp);
  }
  return total / 4.0;
}

Choice choice_from_advantage(double advantage, double tolerance) {
  if (std::abs(advantage) <= tolerance) return Choice::Indifferent;
  return advantage > 0 ? Choice::Invest : Choice::NotInvest;
}

Choice level1_choice(const AttractionScenario& scenario, Role role, const RegionParams& rp) {
  return choice_from_advantage(level1_advantage(scenario, role, rp));
}

std::vector<NashProfile> pure_nash(const AttractionScenario& scenario, const RegionParams& rp) {
  std::vector<NashProfile> out;
  for (unsigned index = 0; index < 8; ++index) {
    const InvestmentProfile p = InvestmentProfile::from_index(index);
    bool stable = true;
    bool tie = false;
    for (Role role : kAllRoles) {
      const double d = invest_advantage(scenario, role, p, rp);
      if (std::abs(d) <= kTie) {
        tie = true;
        continue;
      }
      if ((d > 0) != p.of(role)) {
        stable = false;
        break;
      }
    }
    if (stable) out.push_back({p, tie});
  }
  return out;
}

std::vector<NashProfile> one_la_invests_equilibria(const AttractionScenario& scenario, const RegionParams& rp) {
  std::vector<NashProfile> out;
  for (const NashProfile& p : pure_nash(scenario, rp)) {
    if (!p.profile.ha && (p.profile.la_i != p.profile.la_j)) out.push_back(p);
  }
  return out;
}

double grid_alpha(const GridSpec& grid, std::size_t i) {
  if (grid.n_alpha <= 1) return 0.0;
  return static_cast<double>(i) / static_cast<double>(grid.n_alpha - 1);
}

double grid_t(const GridSpec& grid, std::size_t j) {
  return static_cast<double>(j) / static_cast<double>(grid.n_t);
}

std::vector<RegionCell> region_grid(const AttractionScenario& scenario, Analysis analysis, const GridSpec& grid,
                                    int R) {
  std::vector<RegionCell> cells(grid.n_alpha * grid.n_t);
  parallel_for(cells.size(), [&](std::size_t k) {
    const std::size_t j = k / grid.n_alpha + 1;
    const std::size_t i = k % grid.n_alpha;
    RegionCell& cell = cells[k];
    cell.alpha = grid_alpha(grid, i);
    cell.t = grid_t(grid, j);
    const RegionParams rp{cell.alpha, cell.t, R};
    switch (analysis) {
      case Analysis::Nash: cell.profile_label = join_labels(pure_nash(scenario, rp)); break;
      case Analysis::Mixed: cell.profile_label = join_labels(one_la_invests_equilibria(scenario, rp)); break;
      case Analysis::Level1: {
        std::string s;
        for (Role role : kAllRoles) {
          if (!s.empty()) s += '-';
          switch (level1_choice(scenario, role, rp)) {
            case Choice::Invest: s += 'I'; break;
            case Choice::NotInvest: s += 'N'; break;
            case Choice::Indifferent: s += '='; break;
          }
        }
        cell.profile_label = s;
        break;
      }
    }
  });
  return cells;
}

std::optional<double> separation_onset(int R) {
  constexpr int kScan = 2000;
  double prev = 0.0;
  if (separation_feasible(1.0 / kScan, R)) return 1.0 / kScan;
  for (int k = 1; k <= kScan; ++k) {
    const double t = static_cast<double>(k) / kScan;
    if (separation_feasible(t, R)) {
      double lo = prev;
      double hi = t;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (separation_feasible(mid, R)) hi = mid;
        else lo = mid;
      }
      return hi;
    }
    prev = t;
  }
  return std::nullopt;
}

}  // namespace credence
