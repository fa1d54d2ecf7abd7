#pragma once

// Whole-day discrete-time simulation: arrivals, periodic assignment, backup
// dispatch, optional relocation of idle couriers and courier movement.

#include <cstdint>
#include <string>
#include <vector>

#include "core/domain.hpp"
#include "core/mtamp.hpp"
#include "core/rng.hpp"
#include "core/scenario.hpp"

namespace crowdship::sim {

// Longest assignment interval that still sees more than one request with
// probability at least 1 - epsilon at arrival rate `lambda_max` per minute.
double recommend_timestep(double lambda_max, double epsilon);

struct Arrivals {
  std::vector<Request> requests;  // ids left at 0; the engine numbers them
  std::vector<Courier> couriers;
};

// Requests and couriers appearing during [t, t + step).
Arrivals generate_arrivals(const ScenarioConfig& config, const ServiceArea& area, double t,
                           Rng& rng);

enum class EventType {
  request_arrival,
  courier_arrival,
  assignment,
  pickup,
  delivery,
  backup_dispatch,
  relocation_order,
  relocation_end,
  courier_exit,
  reroute,  // travel towards a stop that re-planning removed
};

std::string_view to_string(EventType type);

struct Event {
  double t = 0.0;
  EventType type = EventType::request_arrival;
  int request_id = -1;
  int courier_id = -1;
  int zone_from = -1;
  int zone_to = -1;
  double cost = 0.0;  // dollars
};

struct ZoneStat {
  int requests = 0;
  int courier_fulfilled = 0;
};

struct AvailabilityPoint {
  double t = 0.0;
  double couriers_per_request = 0.0;
};

struct FlowRecord {
  double t = 0.0;
  int from = 0;
  int to = 0;
  int count = 0;
};

struct RelocationEpoch {
  double t = 0.0;
  int flow_total = 0;
  int pending = 0;      // unassigned requests available for jobs
  int relocatable = 0;  // idle couriers picked from sending zones
  int clusters = 0;
  int jobs = 0;
  double objective = 0.0;
  int orders = 0;
  bool skipped = true;
  std::string reason;  // why the flow step was skipped
};

struct TraceRow {
  double t = 0.0;
  mtamp::TraceRecord record;
};

struct EpochTiming {
  double t = 0.0;
  double assignment_seconds = 0.0;
  double relocation_seconds = 0.0;
};

struct SeedReport {
  std::uint64_t seed = 0;
  double tsc = 0.0;  // dollars
  double courier_pay = 0.0;
  double relocation_pay = 0.0;
  double backup_cost = 0.0;
  int requests = 0;
  int couriers = 0;
  int delivered_by_courier = 0;
  int delivered_by_backup = 0;
  int expired_to_backup = 0;
  int relocation_orders = 0;
  double fulfilled_fraction = 0.0;
  std::uint64_t arrival_checksum = 0;
  std::uint64_t solver_evaluations = 0;

  // Self-checks over the run.
  int unterminated = 0;       // requests never delivered
  int multiply_terminated = 0;
  int late_deliveries = 0;
  int infeasible_commits = 0;
  double identity_gap = 0.0;  // |tsc - sum of event costs|

  std::vector<ZoneStat> zones;
  std::vector<AvailabilityPoint> availability;
  std::vector<FlowRecord> flows;
  std::vector<RelocationEpoch> relocation;
  std::vector<Event> events;
  std::vector<TraceRow> trace;
  std::vector<EpochTiming> timings;
};

struct RunOptions {
  bool trace = false;
  bool timings = false;
};

struct RunReport {
  ScenarioConfig config;
  std::vector<SeedReport> seeds;
};

SeedReport run_seed(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options = {});
// One replication per seed in [seed_base, seed_base + seeds).
RunReport run_day(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace crowdship::sim
