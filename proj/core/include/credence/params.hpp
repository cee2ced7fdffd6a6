#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace credence {

enum class MenuKind { Pm, Pe, Ps };

constexpr std::array<MenuKind, 3> kAllMenus{MenuKind::Pm, MenuKind::Pe, MenuKind::Ps};

std::string_view to_string(MenuKind kind);
MenuKind menu_from_string(std::string_view name);

// All model constants of the credence-goods market. Money is measured in coins.
struct MarketParams {
  double h = 0.4;                                  // probability of the big problem
  double v = 150.0;                                // consumer value of a solved problem
  double sigma = 15.0;                             // outside option
  double c_hi = 60.0;                              // cost of the high-quality treatment
  double c_lo = 20.0;                              // cost of the low-quality treatment
  double p_hi = 100.0;                             // HQT price, common to all menus
  std::array<double, 3> p_lo_menu{40.0, 60.0, 80.0};  // LQT price for Pm, Pe, Ps
  double z = 0.75;                                 // high-ability precision
  double q = 0.5;                                  // low-ability precision
  double gamma = 1.0 / 3.0;                        // prior share of high-ability experts
  double d = 10.0;                                 // investment fee
  double k_inv = 0.9;                              // precision after investing
  int R = 15;                                      // phase-2 rounds
  int phase1_rounds = 10;
  bool hs_uses_delta_c = false;                    // use c_hi - c_lo in the h^s numerator

  double p_lo(MenuKind kind) const { return p_lo_menu[static_cast<std::size_t>(kind)]; }
  double delta_c() const { return c_hi - c_lo; }
  // Price difference of the equal-markup menu, the reference spread of the threshold formulas.
  double delta_p() const { return p_hi - p_lo(MenuKind::Pe); }
};

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws ParamError listing the first violated invariant.
void validate(const MarketParams& params);

MarketParams default_params();
// Experiment-2 configuration: identical to the defaults except for d = 12.
MarketParams experiment2_params();

std::string params_to_json(const MarketParams& params, int indent = 2);
// Missing fields keep their default value; unknown fields are rejected.
MarketParams params_from_json(const std::string& text);

// Applies a single key=value override. Unknown keys throw ParamError.
void apply_override(MarketParams& params, const std::string& key, const std::string& value);
std::vector<std::string> param_keys();

}  // namespace credence
