#include "doctest.h"

#include <cmath>
#include <set>

#include "credence/conditions.hpp"
#include "json.hpp"

using namespace credence;

TEST_CASE("registry names are unique and resolvable") {
  std::set<std::string> names;
  for (const ConditionSpec& c : condition_registry()) {
    CHECK(names.insert(c.name).second);
    CHECK(&find_condition(c.name) == &c);
    CHECK(c.name.rfind(c.group + ".", 0) == 0);
    CHECK(is_modeled(c.dist));
  }
  CHECK(condition_registry().size() == 60);
  CHECK_THROWS_AS(find_condition("missing.name"), UnknownCondition);
}

TEST_CASE("polynomial ratios") {
  const PolyRatio r{{-1.0, 3.0}, {1.0, 3.0}};
  CHECK(r(0.6) == doctest::Approx(0.8 / 2.8));
  CHECK(poly_mul({1.0, 1.0}, {1.0, -1.0}) == std::vector<double>{1.0, 0.0, -1.0});
}

TEST_CASE("bounds at sample points") {
  CHECK(find_condition("sep_la3.la_3_ninv").bound(0.6) == doctest::Approx((3 * 0.6 - 1) / (1 + 3 * 0.6)));
  CHECK(find_condition("sep_la3.la_3_ninv").bound(0.6) == doctest::Approx(0.2857).epsilon(1e-3));
  CHECK(find_condition("mixed_full.ha0_la3la0_ninv").bound(0.5) == doctest::Approx(2.0 / 3.0));
  CHECK(find_condition("level1_full.ha3_ninv").bound(0.6) == doctest::Approx((2 + 0.6) / 3));
  CHECK(find_condition("level1_full.ha3_la0_inv").bound(0.6) == doctest::Approx(0.6));
}

TEST_CASE("separation onset solves the two bounds") {
  const double t = (-2.0 + std::sqrt(13.0)) / 3.0;
  CHECK(0.5 - 0.5 * t == doctest::Approx((3 * t - 1) / (1 + 3 * t)));
}

TEST_CASE("closed-form direction") {
  const ConditionSpec& c = find_condition("level1_full.ha3_la0_inv");
  CHECK(closed_form_check(c, {0.7, 0.6, 15}));
  CHECK_FALSE(closed_form_check(c, {0.5, 0.6, 15}));
}

TEST_CASE("conditions that match the tables agree with best responses away from the bound") {
  for (const char* name : {"sep_la3.la_3_ninv", "mixed_full.ha0_la3la0_ninv", "level1_full.ha3_ninv", "level1_full.ha3_la0_inv"}) {
    const ConditionSpec& c = find_condition(name);
    for (double t : {0.3, 0.6, 0.9}) {
      for (double a = 0.0; a <= 1.0; a += 0.05) {
        if (std::abs(a - c.bound(t)) < 0.02) continue;
        CAPTURE(name);
        CAPTURE(t);
        CAPTURE(a);
        CHECK(closed_form_check(c, {a, t, 15}) == best_response_holds(c, {a, t, 15}));
      }
    }
  }
}

TEST_CASE("registry roots land on the closed-form bound for a matching condition") {
  const ConditionSpec& c = find_condition("sep_la3.la_3_ninv");
  for (double t : {0.4, 0.6, 0.8}) {
    const auto root = registry_root(c, t, 15);
    REQUIRE(root);
    CHECK(*root == doctest::Approx(c.bound(t)).epsilon(1e-9));
  }
}

TEST_CASE("boundary check bookkeeping") {
  const BoundaryCheck b = grid_boundary_check(find_condition("sep_la3.la_3_ninv"), {50, 50}, 15);
  CHECK(b.cells == 2500);
  CHECK(b.pass());
  CHECK(b.far_disagreements <= b.disagreements);
}

TEST_CASE("condition export") {
  const auto doc = nlohmann::json::parse(conditions_json());
  REQUIRE(doc.is_array());
  CHECK(doc.size() == condition_registry().size());
  CHECK(doc[0].contains("name"));
}
