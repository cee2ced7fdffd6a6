#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "credence/attraction.hpp"

namespace credence {

enum class Analysis { Nash, Mixed, Level1 };
enum class Choice { Invest, NotInvest, Indifferent };

std::string_view to_string(Analysis analysis);
std::string_view to_string(Choice choice);
Analysis analysis_from_string(std::string_view name);

// Attraction gained by `role` from investing rather than not, holding the other two
// experts' flags in `others` fixed (the entry for `role` itself is ignored).
double invest_advantage(const AttractionScenario& scenario, Role role, const InvestmentProfile& others,
                        const RegionParams& rp);

// Same difference when the other two experts invest with probability 1/2 each.
double level1_advantage(const AttractionScenario& scenario, Role role, const RegionParams& rp);

Choice choice_from_advantage(double advantage, double tolerance = 1e-12);
Choice level1_choice(const AttractionScenario& scenario, Role role, const RegionParams& rp);

struct NashProfile {
  InvestmentProfile profile;
  bool by_indifference = false;  // some role is exactly indifferent to deviating
};

std::vector<NashProfile> pure_nash(const AttractionScenario& scenario, const RegionParams& rp);

// Pure-Nash profiles in which exactly one low-ability expert invests.
std::vector<NashProfile> one_la_invests_equilibria(const AttractionScenario& scenario, const RegionParams& rp);

struct GridSpec {
  std::size_t n_alpha = 200;  // alpha_i = i / (n_alpha - 1)
  std::size_t n_t = 200;      // t_j = j / n_t, j = 1..n_t
};

double grid_alpha(const GridSpec& grid, std::size_t i);
double grid_t(const GridSpec& grid, std::size_t j);

struct RegionCell {
  double alpha = 0.0;
  double t = 0.0;
  std::string profile_label;  // equilibrium profiles joined by ';', "none" when empty
};

// t-major, alpha-minor ordering. Level1 labels use 'I', 'N' and '=' for indifference.
std::vector<RegionCell> region_grid(const AttractionScenario& scenario, Analysis analysis, const GridSpec& grid,
                                    int R = 15);

// Affine root in alpha of an advantage function, or nullopt when it does not depend on alpha.
template <class F>
std::optional<double> alpha_root(F&& advantage_at_alpha) {
  const double d0 = advantage_at_alpha(0.0);
  const double d1 = advantage_at_alpha(1.0);
  if (d1 == d0) return std::nullopt;
  return -d0 / (d1 - d0);
}

// Smallest t at which only the high-ability expert investing is a Nash profile of the
// x_la = 3 distribution for some alpha, located from the attraction registry.
std::optional<double> separation_onset(int R = 15);

}  // namespace credence
