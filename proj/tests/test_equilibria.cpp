#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "credence/equilibria.hpp"

using namespace credence;

namespace {

double share(const AttractionScenario& sc, Role r, const InvestmentProfile& p, const RegionParams& rp) {
  return attraction_share(sc, r, p, rp).share;
}

// Profiles from which no single expert gains by flipping its own choice.
std::set<unsigned> brute_force_nash(const AttractionScenario& sc, const RegionParams& rp) {
  std::set<unsigned> out;
  for (unsigned i = 0; i < 8; ++i) {
    const InvestmentProfile p = InvestmentProfile::from_index(i);
    bool stable = true;
    for (Role r : kAllRoles) {
      if (share(sc, r, p.with(r, !p.of(r)), rp) > share(sc, r, p, rp) + 1e-12) stable = false;
    }
    if (stable) out.insert(i);
  }
  return out;
}

std::set<unsigned> indices(const std::vector<NashProfile>& v) {
  std::set<unsigned> out;
  for (const NashProfile& n : v) out.insert(n.profile.index());
  return out;
}

bool only_ha_invests_somewhere(const AttractionScenario& sc, double t) {
  for (int i = 0; i <= 400; ++i) {
    for (const NashProfile& n : pure_nash(sc, {i / 400.0, t, 15})) {
      if (n.profile == InvestmentProfile{true, false, false}) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("pure Nash profiles agree with deviation checks") {
  for (const Distribution& d : modeled_distributions()) {
    for (InfoMode info : {InfoMode::FullInfo, InfoMode::NoOtherInfo}) {
      const AttractionScenario sc{d, info};
      for (double t : {0.1, 0.33, 0.5, 0.62, 0.9, 1.0}) {
        for (double a : {0.0, 0.15, 0.4, 0.77, 1.0}) {
          const RegionParams rp{a, t, 15};
          CAPTURE(label(d));
          CAPTURE(t);
          CAPTURE(a);
          CHECK(indices(pure_nash(sc, rp)) == brute_force_nash(sc, rp));
        }
      }
    }
  }
}

TEST_CASE("nobody investing is stable without safe-option demand and undetected imitation") {
  for (const Distribution& d : modeled_distributions()) {
    for (InfoMode info : {InfoMode::FullInfo, InfoMode::NoOtherInfo}) {
      const auto eq = indices(pure_nash({d, info}, {0.0, 1.0, 15}));
      CAPTURE(label(d));
      CHECK(eq.count(0) == 1);
    }
  }
}

TEST_CASE("separation onset for three consumers with one imitator") {
  const double expected = (-2.0 + std::sqrt(13.0)) / 3.0;
  const auto onset = separation_onset(15);
  REQUIRE(onset);
  CHECK(std::abs(*onset - expected) <= 1e-3);
  CHECK(std::abs(*onset - 0.535) <= 1e-3);
  const AttractionScenario sc{{0, 3, 0}, InfoMode::FullInfo};
  CHECK_FALSE(only_ha_invests_somewhere(sc, expected - 0.01));
  CHECK(only_ha_invests_somewhere(sc, expected + 0.01));
  CHECK(only_ha_invests_somewhere(sc, 0.8));
}

TEST_CASE("two consumers at the high-ability expert and early detection rule out separation") {
  const AttractionScenario sc{{2, 1, 0}, InfoMode::FullInfo};
  for (double t : {0.05, 0.2, 0.35, 0.49}) CHECK_FALSE(only_ha_invests_somewhere(sc, t));
}

TEST_CASE("one-imitator-invests profiles are a subset of the Nash profiles") {
  for (const Distribution& d : modeled_distributions()) {
    const AttractionScenario sc{d, InfoMode::FullInfo};
    for (double t : {0.2, 0.6, 1.0}) {
      for (double a : {0.1, 0.5, 0.9}) {
        const RegionParams rp{a, t, 15};
        const auto all = indices(pure_nash(sc, rp));
        for (const NashProfile& n : one_la_invests_equilibria(sc, rp)) {
          CHECK(all.count(n.profile.index()) == 1);
          CHECK_FALSE(n.profile.ha);
          CHECK(int(n.profile.la_i) + int(n.profile.la_j) == 1);
        }
      }
    }
  }
}

TEST_CASE("level-1 advantage averages the four opponent profiles") {
  for (const Distribution& d : modeled_distributions()) {
    const AttractionScenario sc{d, InfoMode::FullInfo};
    for (Role r : kAllRoles) {
      const RegionParams rp{0.45, 0.7, 15};
      double sum = 0.0;
      for (unsigned i = 0; i < 8; ++i) {
        const InvestmentProfile p = InvestmentProfile::from_index(i);
        if (p.of(r)) continue;
        sum += share(sc, r, p.with(r, true), rp) - share(sc, r, p, rp);
      }
      CHECK(level1_advantage(sc, r, rp) == doctest::Approx(sum / 4.0));
    }
  }
}

TEST_CASE("level-1 choices at sample points") {
  const AttractionScenario ha3{{3, 0, 0}, InfoMode::FullInfo};
  CHECK(level1_choice(ha3, Role::HA, {0.8, 0.6, 15}) == Choice::NotInvest);
  CHECK(level1_choice(ha3, Role::LAi, {0.7, 0.6, 15}) == Choice::Invest);
  CHECK(level1_choice(ha3, Role::LAi, {0.5, 0.6, 15}) == Choice::NotInvest);
  const AttractionScenario ha2{{2, 1, 0}, InfoMode::FullInfo};
  const double t = 0.7;
  const double bound = 7.0 / (9.0 - 2.0 * t);
  CHECK(level1_choice(ha2, Role::HA, {bound - 0.02, t, 15}) == Choice::NotInvest);
  CHECK(level1_choice(ha2, Role::HA, {std::min(1.0, bound + 0.02), t, 15}) == Choice::Invest);
}

TEST_CASE("choice from advantage") {
  CHECK(choice_from_advantage(0.1) == Choice::Invest);
  CHECK(choice_from_advantage(-0.1) == Choice::NotInvest);
  CHECK(choice_from_advantage(0.0) == Choice::Indifferent);
  CHECK(choice_from_advantage(1e-14) == Choice::Indifferent);
  CHECK(analysis_from_string("level1") == Analysis::Level1);
  CHECK_THROWS(analysis_from_string("other"));
}

TEST_CASE("region grid layout and labels") {
  const GridSpec g{3, 2};
  CHECK(grid_alpha(g, 0) == 0.0);
  CHECK(grid_alpha(g, 2) == 1.0);
  CHECK(grid_t(g, 1) == doctest::Approx(0.5));
  CHECK(grid_t(g, 2) == 1.0);
  const AttractionScenario sc{{0, 3, 0}, InfoMode::FullInfo};
  const auto cells = region_grid(sc, Analysis::Nash, g, 15);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].t == doctest::Approx(0.5));
  CHECK(cells[1].t == doctest::Approx(0.5));
  CHECK(cells[1].alpha == doctest::Approx(0.5));
  CHECK(cells[3].t == 1.0);
  for (const RegionCell& c : cells) {
    std::set<unsigned> expected = brute_force_nash(sc, {c.alpha, c.t, 15});
    if (expected.empty()) {
      CHECK(c.profile_label == "none");
    } else {
      CHECK(c.profile_label.find(label(InvestmentProfile::from_index(*expected.begin()))) != std::string::npos);
    }
  }
  const auto l1 = region_grid(sc, Analysis::Level1, g, 15);
  for (const RegionCell& c : l1) {
    CHECK(c.profile_label.size() == 5);
    for (std::size_t k : {0u, 2u, 4u}) CHECK(std::string("IN=").find(c.profile_label[k]) != std::string::npos);
  }
  CHECK(region_grid(sc, Analysis::Nash, {0, 0}, 15).empty());
}

TEST_CASE("alpha roots of affine advantages") {
  CHECK(*alpha_root([](double a) { return 2 * a - 0.5; }) == doctest::Approx(0.25));
  CHECK_FALSE(alpha_root([](double) { return 1.0; }).has_value());
}
