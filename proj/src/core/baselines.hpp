#pragma once

// Comparison assignment methods. All take the same base solution as the
// construction heuristics (committed routes, pending requests unassigned) and
// return strictly feasible solutions.

#include <cstdint>
#include <optional>
#include <string_view>

#include "core/domain.hpp"

namespace crowdship::baselines {

enum class Method { insertion, insertion_intra, simulated_annealing, reactive_tabu };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

struct Options {
  std::uint64_t seed = 1;
  std::uint64_t max_evaluations = 2000;  // neighbour evaluations for the local searches
  double time_cap_seconds = 0.0;          // 0 disables the wall-clock cap
  double sa_initial_ratio = 0.1;          // T0 = ratio * starting cost
  double sa_cooling = 0.995;              // geometric cooling per evaluation
  int rts_sample = 30;                    // neighbours examined per tabu iteration
};

struct Outcome {
  Solution solution;
  std::uint64_t evaluations = 0;
};

// Cheapest strictly feasible end-of-route append per request, requests taken in
// release order.
Outcome insertion(const EpochInstance& instance, const Solution& base, bool optimize);

Outcome simulated_annealing(const EpochInstance& instance, const Solution& start,
                            const Options& options);
Outcome reactive_tabu(const EpochInstance& instance, const Solution& start,
                      const Options& options);

// Runs `method`; the local searches start from the insertion-intra solution.
Outcome baseline_assign(Method method, const EpochInstance& instance, const Solution& base,
                        const Options& options);

}  // namespace crowdship::baselines
