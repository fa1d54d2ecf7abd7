#include "core/relocation_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "core/min_cost_flow.hpp"

namespace crowdship::relocation {

int round_expected(double expected, Rounding rounding) {
  if (!(expected >= 0.0)) return 0;
  return static_cast<int>(rounding == Rounding::floor ? std::floor(expected)
                                                      : std::floor(expected + 0.5));
}

ZoneForecast forecast(const ForecastInput& input) {
  const std::size_t n = static_cast<std::size_t>(input.zone_count);
  ZoneForecast f;
  f.idle.assign(n, 0);
  f.finishing.assign(n, 0);
  f.arriving.assign(n, round_expected(input.courier_arrivals, input.rounding));
  f.waiting.assign(n, 0);
  f.expected.assign(n, round_expected(input.request_arrivals, input.rounding));
  auto tally = [n](std::vector<int>& counts, const std::vector<ZoneId>& zones) {
    for (ZoneId z : zones) {
      if (z < 0 || static_cast<std::size_t>(z) >= n) throw std::out_of_range("zone index");
      ++counts[static_cast<std::size_t>(z)];
    }
  };
  tally(f.idle, input.idle_couriers);
  tally(f.finishing, input.finishing_couriers);
  tally(f.waiting, input.waiting_requests);
  auto expect = [&](std::vector<int>& counts, const std::vector<double>& rates) {
    if (rates.empty()) return;
    if (rates.size() != n) throw std::invalid_argument("one arrival rate per zone expected");
    for (std::size_t z = 0; z < n; ++z) counts[z] = round_expected(rates[z], input.rounding);
  };
  expect(f.arriving, input.courier_arrival_rates);
  expect(f.expected, input.request_arrival_rates);
  return f;
}

RelocationTargets compute_targets(const ZoneForecast& forecast) {
  const std::size_t n = forecast.zones();
  RelocationTargets t;
  t.courier_excess.resize(n);
  t.request_excess.resize(n);
  t.share.assign(n, 0.0);
  t.target.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const int net = forecast.supply(r) - forecast.demand(r);
    t.courier_excess[r] = std::max(net, 0);
    t.request_excess[r] = std::max(-net, 0);
    t.total_courier_excess += t.courier_excess[r];
    t.total_request_excess += t.request_excess[r];
  }
  if (t.total_request_excess == 0) return t;
  const long total_n = t.total_courier_excess;
  const long total_d = t.total_request_excess;
  for (std::size_t r = 0; r < n; ++r) {
    t.share[r] = static_cast<double>(t.request_excess[r]) / static_cast<double>(total_d);
    // floor(theta_r * N) in exact integer arithmetic
    const long wanted = static_cast<long>(t.request_excess[r]) * total_n / total_d;
    t.target[r] = static_cast<int>(wanted) - t.request_excess[r];
  }
  return t;
}

ZoneCosts ZoneCosts::from_area(const ServiceArea& area, double speed_mph, double rate_per_hour) {
  if (!(speed_mph > 0)) throw std::invalid_argument("speed must be positive");
  const auto n = static_cast<std::size_t>(area.zone_count());
  ZoneCosts c(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      if (r == s) continue;
      const double miles = distance(area.centroid(static_cast<ZoneId>(r)),
                                    area.centroid(static_cast<ZoneId>(s)));
      c(r, s) = miles / speed_mph * rate_per_hour;
    }
  }
  return c;
}

int FlowPlan::outflow(std::size_t r) const {
  int sum = 0;
  for (std::size_t s = 0; s < zones; ++s) sum += at(r, s);
  return sum;
}

int FlowPlan::inflow(std::size_t r) const {
  int sum = 0;
  for (std::size_t s = 0; s < zones; ++s) sum += at(s, r);
  return sum;
}

int FlowPlan::total() const { return std::accumulate(moves.begin(), moves.end(), 0); }

namespace {

// Reroutes s -> r -> t chains as s -> t when that is no more expensive, so no
// zone both receives and sends couriers.
void cancel_transit(FlowPlan& plan, const ZoneCosts& costs) {
  const std::size_t n = plan.zones;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = 0; s < n; ++s) {
        if (s == r || plan.moves[s * n + r] == 0) continue;
        for (std::size_t t = 0; t < n; ++t) {
          if (t == r || plan.moves[r * n + t] == 0) continue;
          const double direct = s == t ? 0.0 : costs(s, t);
          if (direct > costs(s, r) + costs(r, t) + 1e-12) continue;
          const int k = std::min(plan.moves[s * n + r], plan.moves[r * n + t]);
          plan.moves[s * n + r] -= k;
          plan.moves[r * n + t] -= k;
          if (s != t) plan.moves[s * n + t] += k;
          changed = true;
          if (plan.moves[s * n + r] == 0) break;
        }
      }
    }
  }
}

}  // namespace

FlowPlan solve_flow(const ZoneForecast& forecast, const RelocationTargets& targets,
                    const ZoneCosts& costs) {
  const std::size_t n = forecast.zones();
  if (targets.target.size() != n || costs.zones() != n) {
    throw std::invalid_argument("forecast, targets and costs disagree on zone count");
  }
  FlowPlan plan;
  plan.zones = n;
  plan.moves.assign(n * n, 0);
  if (!targets.triggered()) {
    plan.reason = "no excess supply or no excess demand";
    return plan;
  }

  // need_r > 0: zone must gain need_r couriers net; need_r < 0: may lose -need_r.
  std::vector<long> need(n);
  long demand = 0;
  long supply = 0;
  for (std::size_t r = 0; r < n; ++r) {
    need[r] = static_cast<long>(targets.target[r]) - (forecast.supply(r) - forecast.demand(r));
    if (need[r] > 0) demand += need[r];
    else supply += std::min<long>(-need[r], forecast.idle[r]);
  }
  plan.skipped = false;
  if (demand == 0) return plan;
  if (supply < demand) {
    plan.skipped = true;
    plan.reason = "relocation program infeasible";
    return plan;
  }

  // Nodes: hub A_r = r, out-node O_r = n + r, source 2n, sink 2n + 1.
  const int source = static_cast<int>(2 * n);
  const int sink = source + 1;
  MinCostFlow graph(sink + 1);
  std::vector<int> move_arc(n * n, -1);
  for (std::size_t r = 0; r < n; ++r) {
    const int hub = static_cast<int>(r);
    const int out = static_cast<int>(n + r);
    if (need[r] < 0) graph.add_arc(source, hub, -need[r], 0.0);
    if (need[r] > 0) graph.add_arc(hub, sink, need[r], 0.0);
    if (forecast.idle[r] > 0) graph.add_arc(hub, out, forecast.idle[r], 0.0);
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (forecast.idle[r] == 0) continue;
    for (std::size_t s = 0; s < n; ++s) {
      if (s == r) continue;
      move_arc[r * n + s] =
          graph.add_arc(static_cast<int>(n + r), static_cast<int>(s), demand, costs(r, s));
    }
  }
  const auto solved = graph.solve(source, sink, demand);
  if (solved.flow < demand) {
    plan.skipped = true;
    plan.reason = "relocation program infeasible";
    return plan;
  }
  for (std::size_t i = 0; i < n * n; ++i) {
    if (move_arc[i] >= 0) plan.moves[i] = static_cast<int>(graph.flow(move_arc[i]));
  }
  cancel_transit(plan, costs);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) plan.cost += costs(r, s) * plan.at(r, s);
  }
  return plan;
}

}  // namespace crowdship::relocation
