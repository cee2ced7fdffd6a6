#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace credence {

enum class Role { HA, LAi, LAj };
enum class InfoMode { FullInfo, NoOtherInfo };

constexpr std::array<Role, 3> kAllRoles{Role::HA, Role::LAi, Role::LAj};

std::string_view to_string(Role role);
std::string_view to_string(InfoMode mode);
Role role_from_string(std::string_view name);

// Phase-1 consumer stock of each expert when the investment decision is taken.
// By convention LA_i holds weakly more consumers than LA_j.
struct Distribution {
  int ha = 0;
  int la_i = 0;
  int la_j = 0;

  int of(Role role) const;
  bool operator==(const Distribution&) const = default;
};

std::string label(const Distribution& dist);  // e.g. "0-3-0"

struct AttractionScenario {
  Distribution dist;
  InfoMode info = InfoMode::FullInfo;
};

struct InvestmentProfile {
  bool ha = false;
  bool la_i = false;
  bool la_j = false;

  bool of(Role role) const;
  InvestmentProfile with(Role role, bool invest) const;
  int count() const { return int(ha) + int(la_i) + int(la_j); }
  bool operator==(const InvestmentProfile&) const = default;

  static InvestmentProfile from_index(unsigned index);  // bit 2 = HA, bit 1 = LA_i, bit 0 = LA_j
  unsigned index() const;
};

std::string label(const InvestmentProfile& profile);  // e.g. "I-N-N" in (HA, LA_i, LA_j) order

struct RegionParams {
  double alpha = 0.0;
  double t = 1.0;  // detection time as a share of the phase-2 horizon
  int R = 15;
};

void validate(const RegionParams& rp);

// Time factor of a table term.
//   One:    whole horizon
//   T:      r/R, rounds until an imitator is unmasked
//   Rest:   (R - r)/R
//   Second: a second imitator visit, (R - r)/R that becomes r/R when r <= R/2
//   Vanish: (R - 2r)/R, clamped to zero once r > R/2
enum class TimeFactor { One, T, Rest, Second, Vanish };
enum class Weight { One, Alpha, NotAlpha };

struct Term {
  int num = 1;
  int den = 1;
  Weight weight = Weight::One;
  TimeFactor factor = TimeFactor::One;
};

using Cell = std::vector<Term>;  // an empty cell is an explicit zero share

struct AttractionValue {
  double share = 0.0;
  bool clamped = false;  // a term would have been negative and was set to zero
};

class UnmodeledCell : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Distributions covered by the payoff tables, in canonical labelling.
const std::vector<Distribution>& modeled_distributions();
bool is_modeled(const Distribution& dist);

// Table cell for the full-information case; throws UnmodeledCell when absent.
const Cell& attraction_cell(const Distribution& dist, Role role, const InvestmentProfile& profile);
std::size_t registry_size();

AttractionValue evaluate_cell(const Cell& cell, const RegionParams& rp);

// Expected share of consumer rounds attracted by `role`. Under NoOtherInfo the expert knows
// only its own stock and averages the full-information cells over every split of the other
// consumers, each split equally likely.
AttractionValue attraction_share(const AttractionScenario& scenario, Role role, const InvestmentProfile& profile,
                                 const RegionParams& rp);

// One full-information state entering a NoOtherInfo average.
struct InfoState {
  Distribution dist;
  Role role = Role::HA;
  InvestmentProfile profile;
};

std::vector<InfoState> unobserved_states(const Distribution& dist, Role role, const InvestmentProfile& profile);

std::string describe(const Cell& cell);

}  // namespace credence
