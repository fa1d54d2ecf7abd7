#include "core/construction.hpp"

#include <algorithm>
#include <queue>

#include "core/routing.hpp"

namespace crowdship::construction {

namespace {

double reference_speed(const EpochInstance& instance) {
  double v = 0.0;
  for (const auto& c : instance.couriers) v = std::max(v, c.courier.speed);
  return v > 0.0 ? v : 10.0;
}

// Couriers ordered by pickup distance to `request`, ties by courier id.
std::vector<int> nearest_couriers(const EpochInstance& instance, const Solution& s, int request) {
  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(s.routes.size());
  for (std::size_t k = 0; k < s.routes.size(); ++k) {
    keyed.emplace_back(pickup_distance(instance, *s.routes[k], request), static_cast<int>(k));
  }
  std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return instance.courier(a.second).id < instance.courier(b.second).id;
  });
  std::vector<int> out;
  out.reserve(keyed.size());
  for (const auto& [d, k] : keyed) out.push_back(k);
  return out;
}

// Tries couriers nearest-first; on success the solution is updated in place.
bool place_nearest_first(const EpochInstance& instance, Solution& s, int request) {
  for (int k : nearest_couriers(instance, s, request)) {
    if (auto plan = feasible_insertion(instance, *s.routes[k], request, true)) {
      s.routes[k] = std::make_shared<const RoutePlan>(std::move(*plan));
      return true;
    }
  }
  return false;
}

Solution request_ordered(const EpochInstance& instance, const Solution& base,
                         std::vector<int> order) {
  Solution s = base;
  std::vector<int> left;
  for (int r : order) {
    if (!place_nearest_first(instance, s, r)) left.push_back(r);
  }
  return make_solution(std::move(s.routes), std::move(left), instance.params);
}

Solution by_slack(const EpochInstance& instance, const Solution& base) {
  const double v = reference_speed(instance);
  std::vector<int> order = base.unassigned;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = slack_time(instance.request(a), instance.now, v);
    const double sb = slack_time(instance.request(b), instance.now, v);
    if (sa != sb) return sa < sb;
    return instance.request(a).id < instance.request(b).id;
  });
  return request_ordered(instance, base, std::move(order));
}

Solution by_availability(const EpochInstance& instance, const Solution& base) {
  std::vector<std::pair<int, int>> keyed;  // (reachable couriers, request)
  for (int r : base.unassigned) {
    int n = 0;
    for (const auto& route : base.routes) {
      n += pickup_distance(instance, *route, r) <= instance.params.pickup_threshold;
    }
    keyed.emplace_back(n, r);
  }
  std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    const Request& ra = instance.request(a.second);
    const Request& rb = instance.request(b.second);
    if (ra.release != rb.release) return ra.release < rb.release;
    return ra.id < rb.id;
  });
  std::vector<int> order;
  for (const auto& [n, r] : keyed) order.push_back(r);
  return request_ordered(instance, base, std::move(order));
}

Solution by_courier_time(const EpochInstance& instance, const Solution& base) {
  Solution s = base;
  std::vector<int> left = base.unassigned;

  auto residual = [&](int k) {
    const RoutePlan& route = *s.routes[k];
    const double busy_until = route.stops.empty() ? instance.now : route.completion;
    return instance.courier(k).available_until - busy_until;
  };
  using Entry = std::pair<double, int>;  // (residual budget, courier index)
  auto lower = [&](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return instance.courier(a.second).id > instance.courier(b.second).id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> queue(lower);
  for (std::size_t k = 0; k < s.routes.size(); ++k) {
    queue.emplace(residual(static_cast<int>(k)), static_cast<int>(k));
  }

  while (!queue.empty() && !left.empty()) {
    const int k = queue.top().second;
    queue.pop();
    std::vector<std::pair<double, int>> keyed;
    for (std::size_t i = 0; i < left.size(); ++i) {
      keyed.emplace_back(pickup_distance(instance, *s.routes[k], left[i]), static_cast<int>(i));
    }
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return instance.request(left[a.second]).id < instance.request(left[b.second]).id;
    });
    for (const auto& [d, i] : keyed) {
      if (auto plan = feasible_insertion(instance, *s.routes[k], left[i], true)) {
        s.routes[k] = std::make_shared<const RoutePlan>(std::move(*plan));
        left.erase(left.begin() + i);
        queue.emplace(residual(k), k);
        break;
      }
    }
  }
  return make_solution(std::move(s.routes), std::move(left), instance.params);
}

}  // namespace

std::string_view to_string(InitialMethod method) {
  switch (method) {
    case InitialMethod::slack_urgency: return "slack-urgency";
    case InitialMethod::courier_availability: return "courier-availability";
    case InitialMethod::courier_time_descending: return "courier-time-descending";
  }
  return "unknown";
}

Solution build_initial(InitialMethod method, const EpochInstance& instance, const Solution& base) {
  if (base.unassigned.empty() || base.routes.empty()) {
    return make_solution(base.routes, base.unassigned, instance.params);
  }
  switch (method) {
    case InitialMethod::slack_urgency: return by_slack(instance, base);
    case InitialMethod::courier_availability: return by_availability(instance, base);
    case InitialMethod::courier_time_descending: return by_courier_time(instance, base);
  }
  return base;
}

TriageResult triage_unassigned(const EpochInstance& instance, std::span<const int> unassigned,
                               const Point& depot, double step) {
  TriageResult out;
  for (int r : unassigned) {
    const Request& req = instance.request(r);
    const double arrival =
        instance.now + step + backup_trip_minutes(depot, req, instance.params.backup_speed);
    if (arrival <= req.deadline() + 1e-9) {
      out.deferred.push_back(r);
    } else {
      out.backup_now.push_back(r);
    }
  }
  return out;
}

Solution base_solution(const EpochInstance& instance,
                       const std::vector<std::vector<Stop>>& committed,
                       std::vector<int> pending) {
  std::vector<RoutePtr> routes;
  routes.reserve(instance.couriers.size());
  for (std::size_t k = 0; k < instance.couriers.size(); ++k) {
    std::vector<Stop> stops = k < committed.size() ? committed[k] : std::vector<Stop>{};
    routes.push_back(std::make_shared<const RoutePlan>(
        route_schedule(instance, static_cast<int>(k), std::move(stops))));
  }
  return make_solution(std::move(routes), std::move(pending), instance.params);
}

}  // namespace crowdship::construction
