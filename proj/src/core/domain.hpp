#pragma once

// Core data model for one dispatch epoch: requests, couriers, route plans,
// solutions and the total-shipping-cost function every solver optimises.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "core/geometry.hpp"

namespace crowdship {

using RequestId = int;
using CourierId = int;

enum class RequestStatus { pending, assigned, onboard, delivered, backup, expired_to_backup };

struct Request {
  RequestId id = 0;
  Point pickup;
  Point delivery;
  double release = 0.0;    // minutes since day start
  double guarantee = 120.0;  // minutes
  double weight = 1.0;       // pounds
  RequestStatus status = RequestStatus::pending;

  double deadline() const { return release + guarantee; }
};

enum class CourierState { idle, en_route, relocating, exited };

struct Courier {
  CourierId id = 0;
  Point entry_point;
  Point current_point;
  double entry_time = 0.0;
  double available_until = 0.0;  // end of the availability window (minutes)
  double speed = 10.0;           // mph
  double capacity = 10.0;        // pounds
  CourierState state = CourierState::idle;

  double budget_remaining(double now) const {
    return available_until > now ? available_until - now : 0.0;
  }
};

// How the capacity term of the cost is measured.
enum class CapacityMeasure {
  excess_weight,  // pounds above capacity, peak per route
  request_count,  // pickups performed while above capacity
};

struct CostParams {
  double lateness_penalty = 0.25;     // weight on lateness minutes
  double availability_penalty = 0.1;  // weight on minutes beyond availability
  double capacity_penalty = 5.0;      // minutes per unit of capacity excess
  double alpha = 5.0;                 // emphasis of cost reduction in selection
  int eta = 6;                        // average spacing of memory sizes
  double pickup_threshold = 1.67;     // miles
  double discard_ratio = 0.5;         // drop candidates costing > (1+ratio) * initial
  int tabu_count = 3;                 // memory entries before a solution is tabu
  int max_memory = 60;                // cap on memory growth during the sizing run
  double courier_rate = 7.0;          // $/hour
  double backup_rate = 68.0;          // $/hour
  double backup_speed = 20.0;         // mph
  CapacityMeasure capacity_measure = CapacityMeasure::excess_weight;

  // Throws std::invalid_argument when a value is out of its domain.
  void validate() const;
};

struct CostBreakdown {
  double travel = 0.0;            // minutes
  double lateness = 0.0;          // minutes past delivery guarantees
  double budget_violation = 0.0;  // minutes past availability windows
  double capacity_excess = 0.0;   // pounds (or requests, see CapacityMeasure)
  double total = 0.0;             // minutes

  bool feasible() const;
};

enum class StopKind : std::uint8_t { pickup, delivery };

struct Stop {
  int request = 0;  // index into EpochInstance::requests
  StopKind kind = StopKind::pickup;

  friend bool operator==(const Stop&, const Stop&) = default;
};

// A courier as the optimiser sees it at one epoch.
struct CourierSnapshot {
  Courier courier;
  double onboard_load = 0.0;  // pounds already carried
};

// Everything a solver needs at one assignment epoch. Requests and couriers are
// addressed by index; `movable[i]` is false for requests already picked up.
struct EpochInstance {
  double now = 0.0;
  std::vector<Request> requests;
  std::vector<CourierSnapshot> couriers;
  std::vector<char> movable;
  CostParams params;

  const Request& request(int index) const { return requests[index]; }
  const Courier& courier(int index) const { return couriers[index].courier; }
};

class MalformedRoute : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RoutePlan {
  int courier = -1;  // index into EpochInstance::couriers
  std::vector<Stop> stops;
  std::vector<double> arrival;  // projected arrival per stop
  std::vector<double> load;     // load after each stop
  double travel = 0.0;
  double lateness = 0.0;
  double budget_violation = 0.0;
  double capacity_excess = 0.0;
  double completion = 0.0;
  std::uint64_t signature = 0;  // hash of the stop sequence

  // This route's share of the total shipping cost.
  double contribution(const CostParams& params) const {
    return travel + params.lateness_penalty * lateness +
           params.availability_penalty * budget_violation +
           params.capacity_penalty * capacity_excess;
  }
  bool feasible() const;
  bool contains(int request) const;
  std::size_t request_count() const;
};

// Schedules `stops` for courier `courier_index` starting at its current point at
// instance.now. Throws MalformedRoute if a delivery precedes its pickup, a
// pickup has no delivery, or an onboard request is picked up again.
RoutePlan route_schedule(const EpochInstance& instance, int courier_index,
                         std::vector<Stop> stops);

// Same as route_schedule without the structural validation; used on hot paths
// where the stop sequence is produced by trusted edits.
RoutePlan schedule_unchecked(const EpochInstance& instance, int courier_index,
                             std::vector<Stop> stops);

using RoutePtr = std::shared_ptr<const RoutePlan>;

struct Solution {
  std::vector<RoutePtr> routes;  // one per courier, indexed like instance.couriers
  std::vector<int> unassigned;   // sorted request indices
  CostBreakdown cost;

  const RoutePlan& route(int courier_index) const { return *routes[courier_index]; }
  std::size_t assigned_count() const;
};

CostBreakdown solution_cost(const Solution& solution, const CostParams& params);

// Builds a solution with cost filled in; `unassigned` is sorted on the way in.
Solution make_solution(std::vector<RoutePtr> routes, std::vector<int> unassigned,
                       const CostParams& params);

// Copy of `base` with route `plan.courier` replaced; cost is recomputed.
Solution with_route(const Solution& base, RoutePlan plan, const CostParams& params);
Solution with_routes(const Solution& base, RoutePlan a, RoutePlan b, const CostParams& params);

// Lexicographic preference: fewer unassigned requests, then lower cost.
bool preferable(const Solution& a, const Solution& b);

// Distance a courier must deviate to reach the pickup of `request`: from the
// courier's position, or from any stop still on its route.
double pickup_distance(const EpochInstance& instance, const RoutePlan& route, int request);
double pickup_distance(const Courier& courier, const Request& request);

// Latest pickup time allowing a direct on-time delivery, minus `now`.
double slack_time(const Request& request, double now, double speed_mph);

// Duration (minutes) of a dedicated backup trip depot -> pickup -> delivery.
double backup_trip_minutes(const Point& depot, const Request& request, double backup_speed);

}  // namespace crowdship
