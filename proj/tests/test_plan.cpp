#include <doctest.h>

#include <map>

#include "configk3/plan.hpp"

using namespace configk3;

namespace {
const char* kEq2 =
    "u^2*a^2*c-u*v*a^2*c-v^2*b^3+u*v*b^2*c+v^2*a*b^2-u*v*a*b*c+u*v*a*c^2-"
    "u^2*a*c^2";
}

TEST_CASE("find_plan reproduces the Sturmfels construction for L_V") {
  Configuration lv = builtin_lv();
  ConstructionPlan plan = find_plan(lv);
  CHECK(plan.frame_points == std::array<int, 4>{1, 2, 3, 5});
  CHECK(plan.on_line_point == 7);
  CHECK(plan.free_point == 6);
  REQUIRE(plan.steps.size() == 4);
  REQUIRE(plan.residual_lines.size() == 1);
  CHECK(plan.residual_lines[0] == std::array<int, 3>{0, 6, 9});

  std::map<int, ConstructionStep> by_target;
  for (const auto& s : plan.steps) by_target[s.target] = s;
  CHECK(by_target.count(4));
  CHECK(by_target[4].line1 == std::array<int, 2>{1, 2});
  CHECK(by_target[4].line2 == std::array<int, 2>{5, 6});
  CHECK(by_target.count(9));
  CHECK(by_target[9].line1 == std::array<int, 2>{1, 7});
  CHECK(by_target[9].line2 == std::array<int, 2>{2, 5});
}

TEST_CASE("derive reproduces Eq-style Sturmfels polynomial exactly") {
  Configuration lv = builtin_lv();
  CompiledEquation eq = derive(find_plan(lv));
  MultiPoly expected = MultiPoly::parse(kEq2).normalized();
  CHECK(eq.polynomial == expected);
  CHECK(eq.classification == EquationClass::irreducible);
  CHECK(eq.outcome == RealizationOutcome::irreducible_surface);
  auto bd = eq.polynomial.bidegree_uv_abc();
  CHECK(bd.first == 2);
  CHECK(bd.second == 3);
  CHECK(!eq.open_conditions.empty());
}

TEST_CASE("classification split over all ten classes") {
  auto classes = enumerate_n3(10);
  REQUIRE(classes.size() == 10);
  int zero = 0, irreducible = 0, reducible_one = 0, non_realizable = 0, other = 0;
  for (const auto& c : classes) {
    CompiledEquation eq = classify_with_plan_policy(c).eq;
    switch (eq.outcome) {
      case RealizationOutcome::desargues_zero: ++zero; break;
      case RealizationOutcome::irreducible_surface: ++irreducible; break;
      case RealizationOutcome::reducible_one: ++reducible_one; break;
      case RealizationOutcome::non_realizable: ++non_realizable; break;
      default: ++other; break;
    }
  }
  CHECK(zero == 1);
  CHECK(irreducible == 4);
  CHECK(reducible_one == 4);
  CHECK(non_realizable == 1);
  CHECK(other == 0);
}

TEST_CASE("plan independence of the classification") {
  Configuration lv = builtin_lv();
  auto plans = find_plans(lv, 3);
  REQUIRE(plans.size() >= 2);
  CompiledEquation e0 = derive(plans[0]);
  CompiledEquation e1 = derive(plans[1]);
  CHECK(e0.outcome == e1.outcome);
  CHECK(e0.classification == e1.classification);
}

TEST_CASE("sample_realization acceptance and rejection paths") {
  Configuration lv = builtin_lv();
  CompiledEquation eq = derive(find_plan(lv));

  // A verified rational point of the surface off the degenerate loci.
  RealizationSample good =
      sample_realization(eq, lv, Rational(3), {Rational(4), Rational(-3), Rational(7)});
  CHECK(good.accepted);
  CHECK(good.points.size() == 10);

  // [1:1:1] coincides with frame point 5: rejection, not error.
  RealizationSample deg =
      sample_realization(eq, lv, Rational(2), {Rational(1), Rational(1), Rational(1)});
  CHECK(!deg.accepted);
  CHECK(!deg.rejection.empty());

  // The section [1:t:t] meets the line through frame points 1 and 5
  // identically, so its own fiber points are always rejected.
  RealizationSample sec =
      sample_realization(eq, lv, Rational(2), {Rational(1), Rational(2), Rational(2)});
  CHECK(!sec.accepted);

  // u = 0 rejected through an open condition (t0 = 0, b = 0 satisfies F).
  RealizationSample uzero =
      sample_realization(eq, lv, Rational(0), {Rational(1), Rational(0), Rational(1)});
  CHECK(!uzero.accepted);

  // Violating the equation precondition is an error, not a rejection.
  CHECK_THROWS(sample_realization(eq, lv, Rational(2),
                                  {Rational(5), Rational(7), Rational(11)}));
}
