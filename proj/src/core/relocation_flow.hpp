#pragma once

// Zone-level relocation bound: forecast idle supply and unserved demand per
// zone for the next epoch, derive proportional targets and solve the
// relocation program as a min-cost flow.

#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace crowdship::relocation {

enum class Rounding { half_up, floor };

// Expected arrivals rounded to a count.
int round_expected(double expected, Rounding rounding);

struct ZoneForecast {
  std::vector<int> idle;       // n'  idle couriers right after assignment
  std::vector<int> finishing;  // m   couriers becoming idle by the next epoch
  std::vector<int> arriving;   // expected new couriers
  std::vector<int> waiting;    // d'  unassigned requests right after assignment
  std::vector<int> expected;   // expected new requests

  std::size_t zones() const { return idle.size(); }
  int supply(std::size_t r) const { return idle[r] + finishing[r] + arriving[r]; }
  int demand(std::size_t r) const { return waiting[r] + expected[r]; }
};

struct ForecastInput {
  int zone_count = 0;
  std::vector<ZoneId> idle_couriers;       // zone of each idle courier
  std::vector<ZoneId> finishing_couriers;  // zone where each finishing courier ends up
  std::vector<ZoneId> waiting_requests;    // pickup zone of each unassigned request
  double courier_arrivals = 0.0;           // expected new couriers per zone over the step
  double request_arrivals = 0.0;           // expected new requests per zone over the step
  // Per-zone expectations; when non-empty they replace the uniform values above.
  std::vector<double> courier_arrival_rates;
  std::vector<double> request_arrival_rates;
  Rounding rounding = Rounding::half_up;
};

ZoneForecast forecast(const ForecastInput& input);

struct RelocationTargets {
  std::vector<int> courier_excess;  // n_exc
  std::vector<int> request_excess;  // d_exc
  std::vector<double> share;        // theta
  std::vector<int> target;          // n_exc,rloc
  int total_courier_excess = 0;
  int total_request_excess = 0;

  // Relocation is considered only when both totals are positive.
  bool triggered() const { return total_courier_excess > 0 && total_request_excess > 0; }
};

RelocationTargets compute_targets(const ZoneForecast& forecast);

// Dense zone-by-zone relocation cost in dollars.
class ZoneCosts {
 public:
  ZoneCosts() = default;
  explicit ZoneCosts(std::size_t zones) : zones_(zones), cost_(zones * zones, 0.0) {}
  // Centroid distance / speed, paid at `rate` dollars per hour.
  static ZoneCosts from_area(const ServiceArea& area, double speed_mph, double rate_per_hour);

  std::size_t zones() const { return zones_; }
  double operator()(std::size_t r, std::size_t s) const { return cost_[r * zones_ + s]; }
  double& operator()(std::size_t r, std::size_t s) { return cost_[r * zones_ + s]; }

 private:
  std::size_t zones_ = 0;
  std::vector<double> cost_;
};

struct FlowPlan {
  std::size_t zones = 0;
  std::vector<int> moves;  // w, row-major zones x zones
  double cost = 0.0;       // dollars
  bool skipped = true;     // no relocation this epoch
  std::string reason;

  int at(std::size_t r, std::size_t s) const { return moves[r * zones + s]; }
  int outflow(std::size_t r) const;
  int inflow(std::size_t r) const;
  int total() const;
};

// Minimises sum c_rs w_rs subject to
//   n_r - d_r + inflow_r - outflow_r >= target_r  and  outflow_r <= n'_r.
// Returns a skipped plan when relocation is not triggered or infeasible, and a
// zero plan when no zone falls short of its target.
FlowPlan solve_flow(const ZoneForecast& forecast, const RelocationTargets& targets,
                    const ZoneCosts& costs);

}  // namespace crowdship::relocation
