#pragma once

// Exhaustive reference solvers for small instances.

#include <vector>

#include "core/domain.hpp"
#include "core/relocation_flow.hpp"
#include "core/relocation_virtual.hpp"

namespace crowdship::oracle {

struct IlpOptimum {
  bool feasible = false;
  double objective = 0.0;
  std::vector<int> moves;  // row-major zones x zones
};

// Enumerates integer relocation plans (outflow of each zone bounded by its idle
// couriers) and returns the cheapest one meeting every zone's target.
// Costs must be non-negative.
IlpOptimum relocation_ilp(const relocation::ZoneForecast& forecast,
                          const relocation::RelocationTargets& targets,
                          const relocation::ZoneCosts& costs);

struct MkpOptimum {
  double objective = 0.0;
  std::vector<int> cluster_of_job;
};

// Tries every assignment of jobs to clusters (or to none) that respects the
// cluster capacities and uses each request at most once.
MkpOptimum mkp_exhaustive(const relocation::MkpInstance& instance, relocation::Objective objective);

struct PdpOptimum {
  int unassigned = 0;
  double cost = 0.0;  // total travel minutes of the strictly feasible routes
};

// Best assignment of the requests of a fresh instance (all requests pending,
// couriers empty-handed without routes): fewest unserved requests first, then
// least travel. Every stop order of every request subset is examined.
PdpOptimum pdp_exhaustive(const EpochInstance& instance);

}  // namespace crowdship::oracle
