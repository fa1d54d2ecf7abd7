#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "core/construction.hpp"
#include "core/routing.hpp"
#include "fixtures.hpp"

using namespace crowdship;
using namespace crowdship::construction;
using fixtures::courier;
using fixtures::instance;
using fixtures::request;

namespace {

Stop P(int r) { return {r, StopKind::pickup}; }
Stop D(int r) { return {r, StopKind::delivery}; }

EpochInstance random_instance(std::mt19937_64& rng, int requests, int couriers) {
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  std::uniform_real_distribution<double> weight(2.0, 7.0);
  std::uniform_real_distribution<double> until(30.0, 150.0);
  std::vector<Request> rs;
  for (int i = 0; i < requests; ++i) {
    rs.push_back(request(i, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}, 0.0, weight(rng)));
  }
  std::vector<CourierSnapshot> cs;
  for (int k = 0; k < couriers; ++k) cs.push_back(courier(k, {coord(rng), coord(rng)}, until(rng)));
  return instance(rs, cs);
}

}  // namespace

TEST_CASE("initial solutions place every request at most once and stay feasible") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const EpochInstance in = random_instance(rng, 12, 4);
    std::vector<int> pending(12);
    for (int i = 0; i < 12; ++i) pending[i] = i;
    const Solution base = base_solution(in, {}, pending);
    for (InitialMethod m : kInitialMethods) {
      const Solution s = build_initial(m, in, base);
      std::multiset<int> seen(s.unassigned.begin(), s.unassigned.end());
      for (const auto& route : s.routes) {
        CHECK(route->feasible());
        for (int r : movable_requests(in, *route)) seen.insert(r);
        CHECK_NOTHROW(route_schedule(in, route->courier, route->stops));
      }
      CHECK(seen == std::multiset<int>(pending.begin(), pending.end()));
      CHECK(s.cost.total == doctest::Approx(solution_cost(s, in.params).total));
    }
  }
}

TEST_CASE("initial solutions keep committed stops in order") {
  auto in = instance({request(0, {1, 0}, {1, 1}), request(1, {1.2, 0}, {1.2, 1}), request(2, {0.5, 0}, {0.5, 0.5})},
                     {courier(0, {0, 0})});
  const Solution base = base_solution(in, {{P(0), D(0)}}, {1, 2});
  for (InitialMethod m : kInitialMethods) {
    const Solution s = build_initial(m, in, base);
    std::vector<Stop> kept;
    for (const Stop& st : s.route(0).stops) {
      if (st.request == 0) kept.push_back(st);
    }
    CHECK(kept == std::vector<Stop>{P(0), D(0)});
    CHECK(s.unassigned.empty());
  }
}

TEST_CASE("requests out of reach stay unassigned") {
  auto in = instance({request(0, {5, 5}, {5, 6})}, {courier(0, {0, 0})});
  const Solution base = base_solution(in, {}, {0});
  for (InitialMethod m : kInitialMethods) {
    CHECK(build_initial(m, in, base).unassigned == std::vector<int>{0});
  }
}

TEST_CASE("method names") {
  CHECK(to_string(InitialMethod::slack_urgency) == "slack-urgency");
  CHECK(to_string(InitialMethod::courier_availability) == "courier-availability");
  CHECK(to_string(InitialMethod::courier_time_descending) == "courier-time-descending");
}

TEST_CASE("triage sends a request to backup only when waiting would be too late") {
  // Depot at origin; pickup 1 mile, delivery 1 more: 6 minutes at 20 mph.
  auto in = instance({request(0, {1, 0}, {1, 1}, 0.0, 3.0, 26.0),
                      request(1, {1, 0}, {1, 1}, 0.0, 3.0, 25.9),
                      request(2, {1, 0}, {1, 1}, 0.0, 3.0, 120.0)},
                     {}, 10.0);
  const TriageResult t = triage_unassigned(in, std::vector<int>{0, 1, 2}, {0, 0}, 10.0);
  // Request 0 lands exactly on its deadline when sent at the next epoch.
  CHECK(t.deferred == std::vector<int>{0, 2});
  CHECK(t.backup_now == std::vector<int>{1});
}
