#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "credence/attraction.hpp"
#include "credence/equilibria.hpp"

namespace credence {

// Polynomial ratio in t with ascending coefficients.
struct PolyRatio {
  std::vector<double> num{0.0};
  std::vector<double> den{1.0};

  double operator()(double t) const;
};

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b);

enum class Direction { GE, GT, LE, LT };

std::string_view to_string(Direction direction);

// Closed-form alpha threshold for one expert's investment choice. The low branch applies
// for t < 1/2 and the high branch for t >= 1/2.
struct ConditionSpec {
  std::string name;
  std::string group;
  Analysis analysis = Analysis::Nash;
  InfoMode info = InfoMode::FullInfo;
  Distribution dist;
  Role role = Role::HA;
  InvestmentProfile others;  // flags of the other two experts; unused for level-1
  bool describes_invest = true;
  Direction direction = Direction::GE;
  PolyRatio branch_lo;
  PolyRatio branch_hi;

  double bound(double t) const;
};

class UnknownCondition : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

const std::vector<ConditionSpec>& condition_registry();
const ConditionSpec& find_condition(std::string_view name);

// Whether alpha = rp.alpha satisfies the closed-form inequality at t = rp.t.
bool closed_form_check(const ConditionSpec& cond, const RegionParams& rp);

// Advantage of investing for the condition's expert, from the attraction registry.
double condition_advantage(const ConditionSpec& cond, const RegionParams& rp);

// Whether the registry best response at rp agrees with the choice the condition describes.
bool best_response_holds(const ConditionSpec& cond, const RegionParams& rp);

// Alpha at which the registry best response flips, for cross-checks against bound().
std::optional<double> registry_root(const ConditionSpec& cond, double t, int R = 15);

struct BoundaryCheck {
  std::string name;
  std::size_t cells = 0;
  std::size_t disagreements = 0;      // grid and closed form differ
  std::size_t far_disagreements = 0;  // ... farther than one cell from the closed-form bound
  double worst_t = 0.0;
  double worst_alpha = 0.0;
  double worst_distance = 0.0;
  bool pass() const { return far_disagreements == 0; }
};

// Compares the registry best-response grid with the closed form cell by cell. A disagreement
// is tolerated only within one alpha cell of the bound.
BoundaryCheck grid_boundary_check(const ConditionSpec& cond, const GridSpec& grid, int R = 15);

std::string conditions_json(int indent = 2);

}  // namespace credence
