#pragma once

// Relocation by virtual assignment: cluster the couriers picked for relocation,
// form feasible request bundles ("jobs") for each cluster, match clusters to
// jobs with a multiple-knapsack model and turn the match into relocation
// orders. Jobs are never executed; only the relocation targets are used.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core/domain.hpp"
#include "core/relocation_flow.hpp"
#include "core/rng.hpp"

namespace crowdship::relocation {

struct RelocatableCourier {
  int id = 0;           // caller's courier id
  Point location;
  double budget = 0.0;  // minutes of availability left
};

// From every zone, the outflow-many idle couriers with the largest budgets
// (ties by lower id). `idle_by_zone[r]` lists the idle couriers of zone r.
std::vector<RelocatableCourier> pick_relocatable(
    const FlowPlan& flow, const std::vector<std::vector<RelocatableCourier>>& idle_by_zone);

struct Cluster {
  std::vector<int> members;  // indices into the clustered courier list
  Point centroid;
  double budget = 0.0;       // mean remaining minutes

  int size() const { return static_cast<int>(members.size()); }
};

// Distance between two couriers: miles apart plus speed times the budget
// difference in hours.
double courier_dissimilarity(const RelocatableCourier& a, const RelocatableCourier& b,
                             double speed_mph);

// Average-linkage agglomerative clustering; merging stops once the closest
// pair of clusters is farther apart than `psi` miles.
std::vector<Cluster> ah_cluster(std::span<const RelocatableCourier> couriers, double psi,
                                double speed_mph);

struct JobRules {
  double now = 0.0;
  double step = 10.0;            // minutes until the next assignment epoch
  double pickup_threshold = 1.67;
  double speed = 10.0;
  double capacity = 10.0;
  CostParams params;             // penalties used when re-ordering a job
  int max_extensions = 500;      // cap on bundle-growing rounds per cluster
};

struct FeasibleJob {
  std::vector<int> requests;  // sorted indices into the request pool
  std::vector<Stop> stops;    // cost-minimal order found, Stop::request indexes the pool
  double duration = 0.0;      // minutes from the cluster centroid to the last delivery
};

// Minutes a courier may travel to the first pickup of a job.
double first_pickup_limit(const JobRules& rules);

// Single-request jobs first, then repeated extension of probabilistically
// selected jobs by one more request appended after their last stop.
std::vector<FeasibleJob> form_jobs(const Cluster& cluster, std::span<const Request> pool,
                                   const JobRules& rules, Rng& rng);

// Independent feasibility check of a job for a cluster: stop structure,
// deadlines, availability, capacity, first-pickup and extension reach.
bool job_valid(const FeasibleJob& job, const Cluster& cluster, std::span<const Request> pool,
               const JobRules& rules);

enum class Objective { count, benefit };

struct MkpJob {
  std::vector<int> requests;                // request indices, each < request_value.size()
  std::vector<std::optional<double>> cost;  // per cluster; empty optional = not allowed
};

struct MkpInstance {
  std::vector<int> capacity;          // N_k
  std::vector<MkpJob> jobs;
  std::vector<double> request_value;  // backup cost c_i per request
};

struct VirtualAssignment {
  std::vector<int> cluster_of_job;  // -1 when not assigned
  double objective = 0.0;
  bool optimal = true;  // false when the node limit cut the search short
};

// Value of placing job j on cluster k under `objective`.
double assignment_value(const MkpInstance& instance, std::size_t job, std::size_t cluster,
                        Objective objective);
// Objective of a complete assignment, summed in job order.
double assignment_objective(const MkpInstance& instance, std::span<const int> cluster_of_job,
                            Objective objective);

// Exact branch and bound; `node_limit` guards against pathological sizes.
VirtualAssignment solve_virtual(const MkpInstance& instance, Objective objective,
                                std::uint64_t node_limit = 5'000'000);

struct RelocationOrder {
  int courier_id = 0;
  Point target;
  int job = -1;  // index into the job list of the courier's cluster
};

// Pairs each randomly drawn assigned job of a cluster with the cluster member
// that has the most budget left and relocates it to the job's first pickup.
std::vector<RelocationOrder> emit_orders(std::span<const RelocatableCourier> couriers,
                                         const Cluster& cluster,
                                         std::span<const FeasibleJob> jobs,
                                         std::span<const int> assigned_jobs,
                                         std::span<const Request> pool, Rng& rng);

}  // namespace crowdship::relocation
