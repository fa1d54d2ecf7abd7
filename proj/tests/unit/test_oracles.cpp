#include <doctest.h>

#include <cmath>

#include "oracles/brute_force.hpp"
#include "oracles/property_suites.hpp"
#include "oracles/simplex.hpp"
#include "../unit/fixtures.hpp"

using namespace crowdship;
using namespace crowdship::oracle;

TEST_CASE("simplex solves a textbook program") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18: optimum (2, 6) worth 36.
  const LpResult r = solve_lp({{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {-3, -5});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(-36.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("simplex handles negative right-hand sides, infeasibility and unboundedness") {
  // x >= 2 written as -x <= -2.
  const LpResult lower = solve_lp({{-1}}, {-2}, {1});
  REQUIRE(lower.status == LpStatus::optimal);
  CHECK(lower.x[0] == doctest::Approx(2.0));
  CHECK(solve_lp({{1}, {-1}}, {1, -3}, {1}).status == LpStatus::infeasible);
  CHECK(solve_lp({{-1}}, {0}, {-1}).status == LpStatus::unbounded);
}

TEST_CASE("relocation program as a matrix") {
  relocation::ZoneForecast f;
  f.idle = {2, 0};
  f.finishing = {0, 0};
  f.arriving = {0, 0};
  f.waiting = {0, 2};
  f.expected = {0, 0};
  const auto t = relocation::compute_targets(f);
  relocation::ZoneCosts costs(2);
  costs(0, 1) = 1.5;
  costs(1, 0) = 1.5;
  const RelocationLp lp = relocation_lp(f, t, costs);
  CHECK(lp.arcs.size() == 2);
  CHECK(lp.a.size() == 4);
  const LpResult r = solve_lp(lp.a, lp.b, lp.c);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  const IlpOptimum ilp = relocation_ilp(f, t, costs);
  CHECK(ilp.feasible);
  CHECK(ilp.objective == doctest::Approx(3.0));
  CHECK(ilp.moves[1] == 2);
}

TEST_CASE("exhaustive pickup and delivery on a tiny case") {
  using fixtures::courier;
  using fixtures::request;
  // One courier, two requests on a line: serve both in one sweep.
  auto in = fixtures::instance({request(0, {1, 0}, {2, 0}), request(1, {1.5, 0}, {2.5, 0})},
                               {courier(0, {0, 0})});
  const PdpOptimum opt = pdp_exhaustive(in);
  CHECK(opt.unassigned == 0);
  CHECK(opt.cost == doctest::Approx(2.5 * 6.0));

  // A request nobody can reach in time stays unserved.
  auto far = fixtures::instance({request(0, {1, 0}, {9, 9}, 0.0, 3.0, 20.0)}, {courier(0, {0, 0})});
  CHECK(pdp_exhaustive(far).unassigned == 1);
}

TEST_CASE("property suites pass at reduced sizes") {
  for (const SuiteResult& r : {check_relocation_remarks(150, 2), check_lp_integrality(60, 2),
                               check_knapsack(40, 2), check_schedule(200, 2),
                               check_micro_optimality(100, 2)}) {
    INFO(r.name << ": " << r.first_failure);
    CHECK(r.passed());
  }
}
