#pragma once

// Randomised property suites that compare the production solvers against the
// reference solvers. Shared by the test binaries and the `validate` command.

#include <cstdint>
#include <string>
#include <vector>

namespace crowdship::oracle {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  double seconds = 0.0;

  bool passed() const { return cases > 0 && failures == 0; }
};

// Remarks on solved relocation flows over random forecasts (up to 10 zones,
// entries up to 10). Only forecasts that yield a solved plan count as cases.
SuiteResult check_relocation_remarks(int cases, std::uint64_t seed);

// LP relaxation of the relocation program (up to 6 zones) is integral and
// matches integer enumeration and the flow solver.
SuiteResult check_lp_integrality(int cases, std::uint64_t seed);

// Knapsack assignment (up to 12 jobs, 4 clusters) under both objectives
// matches exhaustive enumeration.
SuiteResult check_knapsack(int cases, std::uint64_t seed);

// Memory-size schedule and horizontal step sizes.
SuiteResult check_schedule(int cases, std::uint64_t seed);

struct MicroResult {
  int cases = 0;
  int near_optimal = 0;         // same served count, cost within 5% of the optimum
  int worse_than_initial = 0;   // result less preferable than the best initial solution
  int infeasible = 0;           // result not strictly feasible
  int beats_oracle = 0;         // result better than the exhaustive optimum (oracle bug)
  double seconds = 0.0;
};

// Memory search on fresh instances with up to 5 requests and 3 couriers.
MicroResult run_micro_optimality(int cases, std::uint64_t seed);
// Passes when at least 90% of cases are near-optimal and no case regresses.
SuiteResult check_micro_optimality(int cases, std::uint64_t seed);

// All suites at their acceptance sizes.
std::vector<SuiteResult> run_property_suites(std::uint64_t seed);

}  // namespace crowdship::oracle
