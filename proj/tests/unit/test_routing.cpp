#include <doctest.h>

#include <limits>
#include <random>

#include "core/routing.hpp"
#include "fixtures.hpp"

using namespace crowdship;
using fixtures::courier;
using fixtures::instance;
using fixtures::request;

namespace {

Stop P(int r) { return {r, StopKind::pickup}; }
Stop D(int r) { return {r, StopKind::delivery}; }

EpochInstance random_instance(std::mt19937_64& rng, int requests) {
  std::uniform_real_distribution<double> coord(0.0, 2.0);
  std::vector<Request> rs;
  for (int i = 0; i < requests; ++i) {
    rs.push_back(request(i, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}, 0.0, 3.0, 60.0));
  }
  return instance(rs, {courier(0, {coord(rng), coord(rng)}, 70.0, 8.0)});
}

}  // namespace

TEST_CASE("stop edits") {
  const std::vector<Stop> base = {P(0), D(0)};
  CHECK(with_appended(base, 1) == std::vector<Stop>{P(0), D(0), P(1), D(1)});
  CHECK(with_inserted(base, 1, 0, 2) == std::vector<Stop>{P(1), P(0), D(1), D(0)});
  CHECK(with_inserted(base, 1, 1, 2) == std::vector<Stop>{P(0), P(1), D(1), D(0)});
  CHECK(without_request(std::vector<Stop>{P(0), P(1), D(1), D(0)}, 1) == base);
}

TEST_CASE("intra-route optimisation matches enumeration of placements") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const EpochInstance in = random_instance(rng, 4);
    std::vector<Stop> stops = {P(0), P(1), D(0), D(1), P(2), D(2)};
    const RoutePlan start = route_schedule(in, 0, with_appended(stops, 3));
    const RoutePlan best = intra_route_optimize(in, start, 3);

    double expected = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p <= stops.size(); ++p) {
      for (std::size_t q = p + 1; q <= stops.size() + 1; ++q) {
        const RoutePlan plan = route_schedule(in, 0, with_inserted(stops, 3, p, q));
        expected = std::min(expected, plan.contribution(in.params));
      }
    }
    CHECK(best.contribution(in.params) == doctest::Approx(expected).epsilon(1e-12));
    // Other requests keep their relative order.
    CHECK(without_request(best.stops, 3) == stops);
  }
}

TEST_CASE("intra-route optimisation keeps the current placement on ties") {
  auto in = instance({request(0, {1, 0}, {2, 0})}, {courier(0, {0, 0})});
  const RoutePlan plan = route_schedule(in, 0, {P(0), D(0)});
  const RoutePlan same = intra_route_optimize(in, plan, 0);
  CHECK(same.stops == plan.stops);
}

TEST_CASE("pickup position variants end with the append") {
  std::mt19937_64 rng(5);
  const EpochInstance in = random_instance(rng, 3);
  const RoutePlan route = route_schedule(in, 0, {P(0), D(0), P(1), D(1)});
  const auto variants = pickup_position_variants(in, route, 2);
  REQUIRE(variants.size() == 5);
  CHECK(variants.back().stops == with_appended(route.stops, 2));
  for (std::size_t p = 0; p < variants.size(); ++p) {
    CHECK(variants[p].stops[p] == P(2));
    CHECK(without_request(variants[p].stops, 2) == route.stops);
  }
}

TEST_CASE("admissibility pruning") {
  // Pickup 3 miles away: outside the 1.67 mile threshold.
  auto far = instance({request(0, {3, 0}, {3, 1})}, {courier(0, {0, 0})});
  CHECK_FALSE(admissible_target(far, route_schedule(far, 0, {}), 0));

  auto near = instance({request(0, {1, 0}, {1, 1})}, {courier(0, {0, 0})});
  CHECK(admissible_target(near, route_schedule(near, 0, {}), 0));

  // Too late even when served first.
  auto late = instance({request(0, {1, 0}, {1, 1}, 0.0, 3.0, 10.0)}, {courier(0, {0, 0})});
  CHECK_FALSE(admissible_target(late, route_schedule(late, 0, {}), 0));

  // Courier leaves before the request appears.
  auto gone = instance({request(0, {1, 0}, {1, 1}, 50.0)}, {courier(0, {0, 0}, 40.0)}, 50.0);
  CHECK_FALSE(admissible_target(gone, route_schedule(gone, 0, {}), 0));
}

TEST_CASE("feasible insertion") {
  auto in = instance({request(0, {1, 0}, {1, 1}, 0.0, 6.0), request(1, {1, 0.5}, {0, 1}, 0.0, 6.0)},
                     {courier(0, {0, 0})});
  const RoutePlan empty = route_schedule(in, 0, {});
  const auto first = feasible_insertion(in, empty, 0, false);
  REQUIRE(first.has_value());
  CHECK(first->stops == std::vector<Stop>{P(0), D(0)});
  // Appending keeps the load below capacity.
  const auto second = feasible_insertion(in, *first, 1, false);
  REQUIRE(second.has_value());
  CHECK(second->feasible());
  // Re-optimised placement would pick both up together and overload: not chosen.
  const auto optimised = feasible_insertion(in, *first, 1, true);
  REQUIRE(optimised.has_value());
  CHECK(optimised->feasible());

  auto tight = instance({request(0, {1, 0}, {1, 1}, 0.0, 11.0)}, {courier(0, {0, 0})});
  CHECK_FALSE(feasible_insertion(tight, route_schedule(tight, 0, {}), 0, true).has_value());
}

TEST_CASE("movable requests skip onboard ones") {
  auto in = instance({request(0, {0, 0}, {1, 0}), request(1, {1, 0}, {2, 0})}, {courier(0, {0, 0})});
  in.movable[0] = 0;
  in.couriers[0].onboard_load = 3.0;
  const RoutePlan plan = route_schedule(in, 0, {D(0), P(1), D(1)});
  CHECK(movable_requests(in, plan) == std::vector<int>{1});
}
