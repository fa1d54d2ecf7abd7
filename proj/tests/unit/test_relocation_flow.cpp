#include <doctest.h>

#include <random>

#include "core/relocation_flow.hpp"
#include "oracles/brute_force.hpp"

using namespace crowdship;
using namespace crowdship::relocation;

namespace {

ZoneForecast make(std::vector<int> idle, std::vector<int> waiting) {
  ZoneForecast f;
  const std::size_t n = idle.size();
  f.idle = std::move(idle);
  f.finishing.assign(n, 0);
  f.arriving.assign(n, 0);
  f.waiting = std::move(waiting);
  f.expected.assign(n, 0);
  return f;
}

// Zones on a line, one mile apart, one dollar per mile.
ZoneCosts line_costs(std::size_t n) {
  ZoneCosts c(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) c(r, s) = r > s ? double(r - s) : double(s - r);
  }
  return c;
}

}  // namespace

TEST_CASE("rounding of expected arrivals") {
  CHECK(round_expected(0.15, Rounding::half_up) == 0);
  CHECK(round_expected(0.5, Rounding::half_up) == 1);
  CHECK(round_expected(2.49, Rounding::half_up) == 2);
  CHECK(round_expected(1.99, Rounding::floor) == 1);
  CHECK(round_expected(-1.0, Rounding::half_up) == 0);
}

TEST_CASE("forecast tallies zones") {
  ForecastInput in;
  in.zone_count = 3;
  in.idle_couriers = {0, 0, 2};
  in.finishing_couriers = {1};
  in.waiting_requests = {1, 1, 1, 2};
  in.courier_arrivals = 0.6;
  in.request_arrivals = 0.2;
  const ZoneForecast f = forecast(in);
  CHECK(f.idle == std::vector<int>{2, 0, 1});
  CHECK(f.finishing == std::vector<int>{0, 1, 0});
  CHECK(f.arriving == std::vector<int>{1, 1, 1});
  CHECK(f.waiting == std::vector<int>{0, 3, 1});
  CHECK(f.expected == std::vector<int>{0, 0, 0});
  CHECK(f.supply(0) == 3);
  CHECK(f.demand(1) == 3);

  in.request_arrival_rates = {0.7, 0.1, 1.6};
  CHECK(forecast(in).expected == std::vector<int>{1, 0, 2});
  in.request_arrival_rates = {0.7};
  CHECK_THROWS_AS(forecast(in), std::invalid_argument);
  in.request_arrival_rates.clear();
  in.idle_couriers = {3};
  CHECK_THROWS_AS(forecast(in), std::out_of_range);
}

TEST_CASE("targets spread excess couriers in proportion to excess requests") {
  // Supply excess 3 in zone 0; request excess 2 and 3 in zones 1 and 2.
  const ZoneForecast f = make({3, 0, 0}, {0, 2, 3});
  const RelocationTargets t = compute_targets(f);
  CHECK(t.courier_excess == std::vector<int>{3, 0, 0});
  CHECK(t.request_excess == std::vector<int>{0, 2, 3});
  CHECK(t.total_courier_excess == 3);
  CHECK(t.total_request_excess == 5);
  CHECK(t.share[1] == doctest::Approx(0.4));
  // floor(0.4 * 3) - 2 = -1 and floor(0.6 * 3) - 3 = -2.
  CHECK(t.target == std::vector<int>{0, -1, -2});
  CHECK(t.triggered());
}

TEST_CASE("flow meets targets at least cost") {
  const ZoneForecast f = make({3, 0, 0}, {0, 2, 3});
  const RelocationTargets t = compute_targets(f);
  const FlowPlan plan = solve_flow(f, t, line_costs(3));
  REQUIRE_FALSE(plan.skipped);
  CHECK(plan.at(0, 1) == 1);
  CHECK(plan.at(0, 2) == 1);
  CHECK(plan.total() == 2);
  CHECK(plan.cost == doctest::Approx(3.0));
  CHECK(plan.outflow(0) == 2);
  CHECK(plan.inflow(2) == 1);
}

TEST_CASE("skipped and zero plans") {
  const ZoneForecast balanced = make({1, 0}, {1, 0});
  const FlowPlan none = solve_flow(balanced, compute_targets(balanced), line_costs(2));
  CHECK(none.skipped);
  CHECK_FALSE(none.reason.empty());

  // Excess requests spread too thin for floor(theta N) to reach one courier.
  ZoneForecast thin = make({1, 0, 0, 0}, {0, 1, 1, 1});
  const FlowPlan zero = solve_flow(thin, compute_targets(thin), line_costs(4));
  CHECK_FALSE(zero.skipped);
  CHECK(zero.total() == 0);

  // Excess supply comes from couriers still finishing work: nobody can move.
  ZoneForecast busy = make({0, 0}, {0, 2});
  busy.finishing[0] = 3;
  const FlowPlan infeasible = solve_flow(busy, compute_targets(busy), line_costs(2));
  CHECK(infeasible.skipped);
  CHECK(infeasible.reason == "relocation program infeasible");

  CHECK_THROWS_AS(solve_flow(busy, compute_targets(busy), line_costs(3)), std::invalid_argument);
}

TEST_CASE("flow cost matches integer enumeration on random forecasts") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> zones(2, 5);
  std::uniform_int_distribution<int> count(0, 4);
  int solved = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = zones(rng);
    ZoneForecast f;
    for (int r = 0; r < n; ++r) {
      f.idle.push_back(count(rng));
      f.finishing.push_back(count(rng) / 3);
      f.arriving.push_back(0);
      f.waiting.push_back(count(rng));
      f.expected.push_back(0);
    }
    const RelocationTargets t = compute_targets(f);
    const ZoneCosts costs = line_costs(static_cast<std::size_t>(n));
    const FlowPlan plan = solve_flow(f, t, costs);
    if (!t.triggered()) continue;
    const oracle::IlpOptimum opt = oracle::relocation_ilp(f, t, costs);
    CHECK(opt.feasible == !plan.skipped);
    if (plan.skipped) continue;
    ++solved;
    CHECK(plan.cost == doctest::Approx(opt.objective));
  }
  CHECK(solved > 50);
}

TEST_CASE("zone costs from the area") {
  const ServiceArea area(1.0, 1.0, 0.5, {0.5, 0.5});
  const ZoneCosts c = ZoneCosts::from_area(area, 10.0, 7.0);
  CHECK(c.zones() == 4);
  CHECK(c(0, 0) == 0.0);
  // Half a mile at 10 mph is three minutes; at $7/h that is $0.35.
  CHECK(c(0, 1) == doctest::Approx(0.35));
  CHECK(c(1, 0) == doctest::Approx(0.35));
  CHECK(c(0, 3) == doctest::Approx(0.35 * std::sqrt(2.0)));
  CHECK_THROWS_AS(ZoneCosts::from_area(area, 0.0, 7.0), std::invalid_argument);
}
