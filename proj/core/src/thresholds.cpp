#include "credence/thresholds.hpp"

#include <algorithm>
#include <cmath>

namespace credence {

namespace {

MaybeValue ratio(double num, double den) {
  if (den == 0.0 || !std::isfinite(num / den)) return std::nullopt;
  return num / den;
}

constexpr double kTieTolerance = 1e-12;

}  // namespace

ThresholdSet price_thresholds(const MarketParams& params, IncomeMode mode) {
  const double v = params.v;
  const double dp = params.delta_p();
  ThresholdSet out;
  out.mode = mode;
  if (mode == IncomeMode::Obfuscated) {
    const double q = params.q;
    const double z = params.z;
    const double g = params.gamma;
    const double mix = q - g * q + g * z;
    const double spread_term = dp * (1.0 - 2.0 * q * (1.0 - g) - g * 2.0 * z);
    out.h_m = ratio(dp * mix, v * (1.0 - q * (1.0 - g) - g * z) - spread_term);
    out.h_s = ratio(dp * (mix - 1.0), v * (q * (g - 1.0) - g * z) - spread_term);
    return out;
  }
  const double k = mode == IncomeMode::TransparentHigh ? params.z : params.q;
  out.h_m = ratio(k * dp, (1.0 - k) * v - (1.0 - 2.0 * k) * dp);
  const double numerator_spread = params.hs_uses_delta_c ? params.delta_c() : dp;
  out.h_s = ratio((1.0 - k) * numerator_spread, k * v + (1.0 - 2.0 * k) * dp);
  out.hs_used_delta_c = params.hs_uses_delta_c;
  return out;
}

BeliefBounds belief_bounds(const MarketParams& params) {
  const double v = params.v;
  const double h = params.h;
  const double q = params.q;
  const double dp = params.delta_p();
  const double den = (params.z - q) * (v * h - 2.0 * h * dp + dp);
  BeliefBounds out;
  out.gamma_m = ratio(v * h * (1.0 - q) - (h - 2.0 * h * q + q) * dp, den);
  out.gamma_s = ratio(-v * h * q - (h - 2.0 * h * q + q - 1.0) * dp, den);
  return out;
}

MenuKind prop1_region(double h, const MarketParams& params) {
  ThresholdSet th = price_thresholds(params, IncomeMode::Obfuscated);
  if (th.h_s && h < *th.h_s) return MenuKind::Ps;
  if (th.h_m && h > *th.h_m) return MenuKind::Pm;
  return MenuKind::Pe;
}

RegimeIncomes regime_incomes(double h, double belief_high, const MarketParams& params) {
  MarketParams at_h = params;
  at_h.h = h;
  const double dp = params.delta_p();
  RegimeIncomes out;
  out.pi_m = params.v - params.p_hi;
  out.pi_s = (1.0 - h) * params.v - (params.p_hi - dp);
  out.pi_e = honest_income(mixture_precision(belief_high, params), params.p_hi, dp, at_h);
  return out;
}

MenuKind best_regime(const RegimeIncomes& x) {
  const double best = std::max({x.pi_m, x.pi_s, x.pi_e});
  const double tol = kTieTolerance * std::max(1.0, std::abs(best));
  if (x.pi_e >= best - tol) return MenuKind::Pe;
  if (x.pi_m >= best - tol) return MenuKind::Pm;
  return MenuKind::Ps;
}

std::vector<RegionScanRow> emit_region_scan(const MarketParams& params, const std::vector<double>& gamma_list,
                                            const std::vector<double>& h_grid) {
  std::vector<RegionScanRow> rows;
  rows.reserve(gamma_list.size() * h_grid.size());
  for (double g : gamma_list) {
    for (double h : h_grid) {
      RegionScanRow row;
      row.h = h;
      row.gamma = g;
      row.incomes = regime_incomes(h, g, params);
      row.region = best_regime(row.incomes);
      rows.push_back(row);
    }
  }
  return rows;
}

double transparent_high_income(const MarketParams& params) {
  return expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentHigh, false, params);
}

double transparent_low_income(const MarketParams& params) {
  return expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentLow, false, params);
}

InvestIncomes invest_income_curves(double w, double gamma_tilde, const MarketParams& params) {
  const double pi_h = transparent_high_income(params);
  const double pi_l = transparent_low_income(params);
  const double gap = pi_h - pi_l;
  InvestIncomes out;
  out.pi_alg_inv = (1.0 - w) * pi_h + w * (pi_l - params.d + gamma_tilde * gap);
  out.pi_alg_ninv = pi_l + gap * gamma_tilde;
  return out;
}

MaybeValue r_bar(double w, double gamma_tilde, const MarketParams& params) {
  const double pi_h = transparent_high_income(params);
  const double pi_l = transparent_low_income(params);
  const double stay = invest_income_curves(w, gamma_tilde, params).pi_alg_inv;
  const double leave = (1.0 - gamma_tilde) * pi_h + gamma_tilde * pi_l;
  if (gamma_tilde >= 1.0) return std::nullopt;
  return ratio(2.0 * params.R * (stay - leave), (1.0 - gamma_tilde) * (pi_l - pi_h));
}

SignalingThresholds signaling_thresholds(const MarketParams& params, double gamma_tilde, double w) {
  const double pi_h = transparent_high_income(params);
  const double pi_l = transparent_low_income(params);
  const double gap = pi_h - pi_l;
  const double reach = gap + params.d;
  SignalingThresholds out;
  out.gamma_tilde = gamma_tilde;
  out.w = w;
  out.w_ninv = ratio(gap * (1.0 - gamma_tilde), reach + gap * gamma_tilde);
  out.w_ninv_first_principles = ratio(gap * (1.0 - gamma_tilde), reach - gap * gamma_tilde);
  out.gamma_ninv = ratio(gap - reach * w, gap * (1.0 + w));
  out.r_bar = r_bar(w, gamma_tilde, params);
  out.gamma_second_expert = gap == 0.0 ? MaybeValue{} : MaybeValue{1.0 - reach / gap * w};
  if (out.w_ninv && out.w_ninv_first_principles) {
    out.formulas_disagree = std::abs(*out.w_ninv - *out.w_ninv_first_principles) > 1e-12;
  } else {
    out.formulas_disagree = out.w_ninv.has_value() != out.w_ninv_first_principles.has_value();
  }
  return out;
}

std::vector<RbarCell> emit_rbar_contour(const MarketParams& params, const std::vector<double>& w_grid,
                                        const std::vector<double>& gamma_grid) {
  std::vector<RbarCell> cells;
  cells.reserve(w_grid.size() * gamma_grid.size());
  for (double w : w_grid) {
    for (double g : gamma_grid) {
      RbarCell cell;
      cell.w = w;
      cell.gamma = g;
      cell.r_bar = r_bar(w, g, params);
      if (cell.r_bar) {
        cell.clamped = *cell.r_bar < 0.0;
        cell.feasible = *cell.r_bar >= 0.0 && *cell.r_bar <= params.R;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

MaybeValue all_invest_w_threshold(const MarketParams& params, double penalty) {
  const double pooled = params.gamma * transparent_high_income(params) +
                        (1.0 - params.gamma) * transparent_low_income(params);
  const double pi_inv = expected_consumer_income(MenuKind::Pe, IncomeMode::TransparentHigh, true, params);
  const double pi_o = expected_consumer_income(MenuKind::Pe, IncomeMode::Obfuscated, false, params);
  // pooled = (1 - w) pi_inv + w (pi_o - penalty) solved for w
  return ratio(pi_inv - pooled, pi_inv - (pi_o - penalty));
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out;
  out.reserve(n);
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

}  // namespace credence
