#include "core/domain.hpp"

#include <algorithm>
#include <cmath>

namespace crowdship {

namespace {

constexpr double kTolerance = 1e-9;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h *= 0xff51afd7ed558ccdULL;
  return h ^ (h >> 33);
}

void check_structure(const EpochInstance& instance, std::span<const Stop> stops) {
  for (std::size_t i = 0; i < stops.size(); ++i) {
    const Stop& s = stops[i];
    if (s.request < 0 || s.request >= static_cast<int>(instance.requests.size())) {
      throw MalformedRoute("stop refers to an unknown request");
    }
    if (s.kind == StopKind::pickup) {
      if (!instance.movable[s.request]) {
        throw MalformedRoute("pickup of a request that is already on board");
      }
      bool delivered_later = false;
      for (std::size_t j = i + 1; j < stops.size(); ++j) {
        if (stops[j].request == s.request) {
          if (stops[j].kind == StopKind::pickup) throw MalformedRoute("duplicate pickup");
          delivered_later = true;
          break;
        }
      }
      if (!delivered_later) throw MalformedRoute("pickup without a later delivery");
    } else {
      bool picked_before = !instance.movable[s.request];
      for (std::size_t j = 0; j < i && !picked_before; ++j) {
        picked_before = stops[j].request == s.request && stops[j].kind == StopKind::pickup;
      }
      if (!picked_before) throw MalformedRoute("delivery before pickup");
      for (std::size_t j = i + 1; j < stops.size(); ++j) {
        if (stops[j].request == s.request) throw MalformedRoute("duplicate delivery");
      }
    }
  }
}

}  // namespace

void CostParams::validate() const {
  if (!(lateness_penalty > 0 && availability_penalty > 0 && capacity_penalty > 0)) {
    throw std::invalid_argument("cost penalties must be positive");
  }
  if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
  if (eta < 2) throw std::invalid_argument("eta must be at least 2");
  if (!(pickup_threshold > 0)) throw std::invalid_argument("pickup threshold must be positive");
  if (discard_ratio < 0) throw std::invalid_argument("discard ratio must be non-negative");
  if (tabu_count < 1) throw std::invalid_argument("tabu count must be at least 1");
  if (max_memory < 1) throw std::invalid_argument("max memory must be at least 1");
  if (!(backup_speed > 0)) throw std::invalid_argument("backup speed must be positive");
  if (courier_rate < 0 || backup_rate < 0) throw std::invalid_argument("rates must be non-negative");
}

bool CostBreakdown::feasible() const {
  return lateness <= kTolerance && budget_violation <= kTolerance && capacity_excess <= kTolerance;
}

bool RoutePlan::feasible() const {
  return lateness <= kTolerance && budget_violation <= kTolerance && capacity_excess <= kTolerance;
}

bool RoutePlan::contains(int request) const {
  return std::any_of(stops.begin(), stops.end(), [&](const Stop& s) { return s.request == request; });
}

std::size_t RoutePlan::request_count() const {
  std::size_t n = 0;
  for (const Stop& s : stops) n += s.kind == StopKind::delivery;
  return n;
}

RoutePlan schedule_unchecked(const EpochInstance& instance, int courier_index,
                             std::vector<Stop> stops) {
  const CourierSnapshot& snap = instance.couriers[courier_index];
  const Courier& c = snap.courier;
  const bool by_weight = instance.params.capacity_measure == CapacityMeasure::excess_weight;

  RoutePlan plan;
  plan.courier = courier_index;
  plan.arrival.resize(stops.size());
  plan.load.resize(stops.size());

  double t = instance.now;
  double load = snap.onboard_load;
  Point at = c.current_point;
  double peak_excess = std::max(0.0, load - c.capacity);
  double overloaded_pickups = 0.0;
  std::uint64_t h = 0x51ed27063d1cULL + static_cast<std::uint64_t>(courier_index);

  for (std::size_t i = 0; i < stops.size(); ++i) {
    const Stop& s = stops[i];
    const Request& r = instance.requests[s.request];
    const Point& target = s.kind == StopKind::pickup ? r.pickup : r.delivery;
    const double leg = travel_minutes(at, target, c.speed);
    t += leg;
    plan.travel += leg;
    at = target;
    if (s.kind == StopKind::pickup) {
      load += r.weight;
      if (load > c.capacity + kTolerance) {
        peak_excess = std::max(peak_excess, load - c.capacity);
        overloaded_pickups += 1.0;
      }
    } else {
      load -= r.weight;
      if (t > r.deadline()) plan.lateness += t - r.deadline();
    }
    plan.arrival[i] = t;
    plan.load[i] = load;
    h = mix(h, (static_cast<std::uint64_t>(s.request) << 1) | static_cast<std::uint64_t>(s.kind));
  }
  plan.completion = t;
  if (!stops.empty() && t > c.available_until) plan.budget_violation = t - c.available_until;
  plan.capacity_excess = by_weight ? peak_excess : overloaded_pickups;
  plan.signature = h;
  plan.stops = std::move(stops);
  return plan;
}

RoutePlan route_schedule(const EpochInstance& instance, int courier_index,
                         std::vector<Stop> stops) {
  if (courier_index < 0 || courier_index >= static_cast<int>(instance.couriers.size())) {
    throw std::out_of_range("courier index out of range");
  }
  check_structure(instance, stops);
  return schedule_unchecked(instance, courier_index, std::move(stops));
}

std::size_t Solution::assigned_count() const {
  std::size_t n = 0;
  for (const auto& r : routes) n += r->request_count();
  return n;
}

CostBreakdown solution_cost(const Solution& solution, const CostParams& params) {
  CostBreakdown c;
  for (const auto& r : solution.routes) {
    c.travel += r->travel;
    c.lateness += r->lateness;
    c.budget_violation += r->budget_violation;
    c.capacity_excess += r->capacity_excess;
  }
  c.total = c.travel + params.lateness_penalty * c.lateness +
            params.availability_penalty * c.budget_violation +
            params.capacity_penalty * c.capacity_excess;
  return c;
}

Solution make_solution(std::vector<RoutePtr> routes, std::vector<int> unassigned,
                       const CostParams& params) {
  Solution s;
  s.routes = std::move(routes);
  std::sort(unassigned.begin(), unassigned.end());
  s.unassigned = std::move(unassigned);
  s.cost = solution_cost(s, params);
  return s;
}

Solution with_route(const Solution& base, RoutePlan plan, const CostParams& params) {
  Solution s;
  s.routes = base.routes;
  s.unassigned = base.unassigned;
  const int k = plan.courier;
  s.routes[k] = std::make_shared<const RoutePlan>(std::move(plan));
  s.cost = solution_cost(s, params);
  return s;
}

Solution with_routes(const Solution& base, RoutePlan a, RoutePlan b, const CostParams& params) {
  Solution s;
  s.routes = base.routes;
  s.unassigned = base.unassigned;
  const int ka = a.courier;
  const int kb = b.courier;
  s.routes[ka] = std::make_shared<const RoutePlan>(std::move(a));
  s.routes[kb] = std::make_shared<const RoutePlan>(std::move(b));
  s.cost = solution_cost(s, params);
  return s;
}

bool preferable(const Solution& a, const Solution& b) {
  if (a.unassigned.size() != b.unassigned.size()) return a.unassigned.size() < b.unassigned.size();
  return a.cost.total < b.cost.total;
}

double pickup_distance(const EpochInstance& instance, const RoutePlan& route, int request) {
  const Point& p = instance.requests[request].pickup;
  double best = distance(instance.courier(route.courier).current_point, p);
  for (const Stop& s : route.stops) {
    if (s.request == request) continue;
    const Request& r = instance.requests[s.request];
    best = std::min(best, distance(s.kind == StopKind::pickup ? r.pickup : r.delivery, p));
  }
  return best;
}

double pickup_distance(const Courier& courier, const Request& request) {
  return distance(courier.current_point, request.pickup);
}

double slack_time(const Request& request, double now, double speed_mph) {
  return request.deadline() - travel_minutes(request.pickup, request.delivery, speed_mph) - now;
}

double backup_trip_minutes(const Point& depot, const Request& request, double backup_speed) {
  return (distance(depot, request.pickup) + distance(request.pickup, request.delivery)) /
         backup_speed * 60.0;
}

}  // namespace crowdship
