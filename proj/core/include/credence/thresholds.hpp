#pragma once

#include <optional>
#include <vector>

#include "credence/market.hpp"
#include "credence/params.hpp"

namespace credence {

// A value that may be undefined because a denominator vanishes.
using MaybeValue = std::optional<double>;

struct ThresholdSet {
  MaybeValue h_m;  // Pm preferred for h >= h_m
  MaybeValue h_s;  // Ps preferred for h <= h_s
  IncomeMode mode = IncomeMode::Obfuscated;
  bool hs_used_delta_c = false;
};

// Price-setting thresholds in h. Transparent modes use precision z or q, the obfuscated
// mode the prior mixture of both. With params.hs_uses_delta_c the h^s numerator uses
// c_hi - c_lo instead of the price spread.
ThresholdSet price_thresholds(const MarketParams& params, IncomeMode mode);

struct BeliefBounds {
  MaybeValue gamma_m;
  MaybeValue gamma_s;
};

BeliefBounds belief_bounds(const MarketParams& params);

// Menu chosen in the obfuscated one-period market. The closed interval [h_s, h_m] maps to Pe.
MenuKind prop1_region(double h, const MarketParams& params);

// Consumer incomes of the three markup regimes evaluated at a common HQT price and the
// reference spread, the comparison the price thresholds are built on. belief_high is the
// consumer's probability that an equal-markup expert is high-ability.
struct RegimeIncomes {
  double pi_m = 0.0;
  double pi_s = 0.0;
  double pi_e = 0.0;
};

RegimeIncomes regime_incomes(double h, double belief_high, const MarketParams& params);
// Argmax of the regime incomes. Ties resolve toward Pe, then Pm.
MenuKind best_regime(const RegimeIncomes& incomes);

struct RegionScanRow {
  double h = 0.0;
  double gamma = 0.0;
  RegimeIncomes incomes;
  MenuKind region = MenuKind::Pe;
};

// One row per (belief, h) pair, belief-major, in input order.
std::vector<RegionScanRow> emit_region_scan(const MarketParams& params, const std::vector<double>& gamma_list,
                                            const std::vector<double>& h_grid);

struct InvestIncomes {
  double pi_alg_inv = 0.0;
  double pi_alg_ninv = 0.0;
};

// Transparent equal-markup incomes of the two ability types, the building blocks of the
// investment comparison (57 and 40 coins at the defaults).
double transparent_high_income(const MarketParams& params);
double transparent_low_income(const MarketParams& params);

InvestIncomes invest_income_curves(double w, double gamma_tilde, const MarketParams& params);

struct SignalingThresholds {
  double gamma_tilde = 0.0;
  double w = 0.0;
  MaybeValue w_ninv;                 // closed form, denominator 27 + 17 gamma at the defaults
  MaybeValue w_ninv_first_principles;  // solving pi_ninv >= pi_inv directly, denominator 27 - 17 gamma
  MaybeValue gamma_ninv;             // belief threshold at the given w
  MaybeValue r_bar;                  // retention bound in rounds at the given (w, gamma)
  MaybeValue gamma_second_expert;    // 1 - 27/17 w at the defaults
  bool formulas_disagree = false;    // closed form and first-principles w differ
};

SignalingThresholds signaling_thresholds(const MarketParams& params, double gamma_tilde, double w);

MaybeValue r_bar(double w, double gamma_tilde, const MarketParams& params);

struct RbarCell {
  double w = 0.0;
  double gamma = 0.0;
  MaybeValue r_bar;
  bool feasible = false;  // 0 <= r_bar <= R
  bool clamped = false;   // r_bar < 0, the retention condition holds trivially
};

// Grid is w-major in input order.
std::vector<RbarCell> emit_rbar_contour(const MarketParams& params, const std::vector<double>& w_grid,
                                        const std::vector<double>& gamma_grid);

// Largest w at which every expert prefers to invest when investments carry no ability signal:
// gamma pi_H + (1 - gamma) pi_L >= (1 - w) pi_inv + w (pi_o - penalty).
MaybeValue all_invest_w_threshold(const MarketParams& params, double penalty = 10.0);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace credence
