#include "core/routing.hpp"

#include <algorithm>
#include <limits>

namespace crowdship {

namespace {

constexpr double kTolerance = 1e-9;

// Cost contribution of `base` with `request` inserted at (pickup_at,
// delivery_at). pickup_at < 0 means only the delivery is inserted.
double placement_cost(const EpochInstance& instance, int courier_index,
                      std::span<const Stop> base, int request, int pickup_at, int delivery_at) {
  const CourierSnapshot& snap = instance.couriers[courier_index];
  const Courier& c = snap.courier;
  const CostParams& p = instance.params;
  const bool by_weight = p.capacity_measure == CapacityMeasure::excess_weight;

  double t = instance.now;
  double load = snap.onboard_load;
  Point at = c.current_point;
  double travel = 0.0;
  double lateness = 0.0;
  double peak_excess = std::max(0.0, load - c.capacity);
  double overloaded = 0.0;

  const int total = static_cast<int>(base.size()) + (pickup_at >= 0 ? 2 : 1);
  std::size_t next = 0;
  for (int k = 0; k < total; ++k) {
    Stop s;
    if (k == pickup_at) {
      s = {request, StopKind::pickup};
    } else if (k == delivery_at) {
      s = {request, StopKind::delivery};
    } else {
      s = base[next++];
    }
    const Request& r = instance.requests[s.request];
    const Point& target = s.kind == StopKind::pickup ? r.pickup : r.delivery;
    const double leg = travel_minutes(at, target, c.speed);
    t += leg;
    travel += leg;
    at = target;
    if (s.kind == StopKind::pickup) {
      load += r.weight;
      if (load > c.capacity + kTolerance) {
        peak_excess = std::max(peak_excess, load - c.capacity);
        overloaded += 1.0;
      }
    } else {
      load -= r.weight;
      if (t > r.deadline()) lateness += t - r.deadline();
    }
  }
  const double budget = (total > 0 && t > c.available_until) ? t - c.available_until : 0.0;
  return travel + p.lateness_penalty * lateness + p.availability_penalty * budget +
         p.capacity_penalty * (by_weight ? peak_excess : overloaded);
}

}  // namespace

std::vector<Stop> without_request(std::span<const Stop> stops, int request) {
  std::vector<Stop> out;
  out.reserve(stops.size());
  for (const Stop& s : stops) {
    if (s.request != request) out.push_back(s);
  }
  return out;
}

std::vector<Stop> with_appended(std::span<const Stop> stops, int request) {
  std::vector<Stop> out(stops.begin(), stops.end());
  out.push_back({request, StopKind::pickup});
  out.push_back({request, StopKind::delivery});
  return out;
}

std::vector<Stop> with_inserted(std::span<const Stop> stops, int request, std::size_t pickup_at,
                                std::size_t delivery_at) {
  std::vector<Stop> out;
  out.reserve(stops.size() + 2);
  std::size_t next = 0;
  for (std::size_t k = 0; k < stops.size() + 2; ++k) {
    if (k == pickup_at) {
      out.push_back({request, StopKind::pickup});
    } else if (k == delivery_at) {
      out.push_back({request, StopKind::delivery});
    } else {
      out.push_back(stops[next++]);
    }
  }
  return out;
}

RoutePlan intra_route_optimize(const EpochInstance& instance, const RoutePlan& route, int request) {
  const std::vector<Stop> base = without_request(route.stops, request);
  const int m = static_cast<int>(base.size());
  const bool has_pickup = std::any_of(route.stops.begin(), route.stops.end(), [&](const Stop& s) {
    return s.request == request && s.kind == StopKind::pickup;
  });

  double best = route.contribution(instance.params);
  int best_p = -2;
  int best_q = -2;
  if (has_pickup) {
    for (int p = 0; p <= m; ++p) {
      for (int q = p + 1; q <= m + 1; ++q) {
        const double c = placement_cost(instance, route.courier, base, request, p, q);
        if (c < best - kTolerance) {
          best = c;
          best_p = p;
          best_q = q;
        }
      }
    }
  } else {
    for (int q = 0; q <= m; ++q) {
      const double c = placement_cost(instance, route.courier, base, request, -1, q);
      if (c < best - kTolerance) {
        best = c;
        best_p = -1;
        best_q = q;
      }
    }
  }
  if (best_q == -2) return route;

  std::vector<Stop> stops;
  if (best_p >= 0) {
    stops = with_inserted(base, request, static_cast<std::size_t>(best_p),
                          static_cast<std::size_t>(best_q));
  } else {
    stops = base;
    stops.insert(stops.begin() + best_q, Stop{request, StopKind::delivery});
  }
  return schedule_unchecked(instance, route.courier, std::move(stops));
}

std::vector<RoutePlan> pickup_position_variants(const EpochInstance& instance,
                                                const RoutePlan& route, int request) {
  const std::span<const Stop> base(route.stops);
  const int m = static_cast<int>(base.size());
  std::vector<RoutePlan> out;
  out.reserve(static_cast<std::size_t>(m) + 1);
  for (int p = 0; p <= m; ++p) {
    int best_q = m + 1;
    double best = std::numeric_limits<double>::infinity();
    for (int q = p + 1; q <= m + 1; ++q) {
      const double c = placement_cost(instance, route.courier, base, request, p, q);
      if (c < best - kTolerance) {
        best = c;
        best_q = q;
      }
    }
    out.push_back(schedule_unchecked(
        instance, route.courier,
        with_inserted(base, request, static_cast<std::size_t>(p), static_cast<std::size_t>(best_q))));
  }
  // Keep the end-of-route append last regardless of where its best delivery fell.
  out.back() = schedule_unchecked(instance, route.courier, with_appended(base, request));
  return out;
}

bool admissible_target(const EpochInstance& instance, const RoutePlan& target, int request) {
  const Request& r = instance.requests[request];
  const Courier& c = instance.courier(target.courier);
  const double direct = instance.now + travel_minutes(c.current_point, r.pickup, c.speed) +
                        travel_minutes(r.pickup, r.delivery, c.speed);
  if (direct > r.deadline() + kTolerance) return false;
  if (pickup_distance(instance, target, request) > instance.params.pickup_threshold + kTolerance) {
    return false;
  }
  if (c.available_until < r.release) return false;
  return true;
}

std::optional<RoutePlan> feasible_insertion(const EpochInstance& instance, const RoutePlan& route,
                                            int request, bool optimize) {
  if (pickup_distance(instance, route, request) > instance.params.pickup_threshold + kTolerance) {
    return std::nullopt;
  }
  RoutePlan plan = schedule_unchecked(instance, route.courier, with_appended(route.stops, request));
  if (optimize) plan = intra_route_optimize(instance, plan, request);
  if (!plan.feasible()) return std::nullopt;
  return plan;
}

std::vector<int> movable_requests(const EpochInstance& instance, const RoutePlan& route) {
  std::vector<int> out;
  for (const Stop& s : route.stops) {
    if (s.kind == StopKind::pickup && instance.movable[s.request]) out.push_back(s.request);
  }
  return out;
}

}  // namespace crowdship
