#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "core/domain.hpp"

namespace crowdship::construction {

enum class InitialMethod {
  slack_urgency,            // most urgent request first, nearest courier first
  courier_availability,     // requests with fewest reachable couriers first
  courier_time_descending,  // courier with most remaining time picks its nearest request
};

inline constexpr std::array<InitialMethod, 3> kInitialMethods = {
    InitialMethod::slack_urgency, InitialMethod::courier_availability,
    InitialMethod::courier_time_descending};

std::string_view to_string(InitialMethod method);

// `base` carries the committed routes of every courier and, in `unassigned`,
// the pending requests to place. Every placement appends the request to a
// route, re-optimises its position and must keep the route strictly feasible
// with the pickup inside the threshold. Requests that fit nowhere stay in
// `unassigned`.
Solution build_initial(InitialMethod method, const EpochInstance& instance, const Solution& base);

struct TriageResult {
  std::vector<int> backup_now;
  std::vector<int> deferred;
};

// Splits unassigned requests into those a backup vehicle leaving the depot at
// the next epoch (now + step) could still deliver on time (deferred, boundary
// inclusive) and those that must be dispatched now.
TriageResult triage_unassigned(const EpochInstance& instance, std::span<const int> unassigned,
                               const Point& depot, double step);

// Base solution: committed stop sequences per courier plus pending requests.
Solution base_solution(const EpochInstance& instance,
                       const std::vector<std::vector<Stop>>& committed,
                       std::vector<int> pending);

}  // namespace crowdship::construction
