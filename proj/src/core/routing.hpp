#pragma once

// Route edits shared by the construction heuristics, the memory search and the
// baseline solvers.

#include <optional>
#include <span>
#include <vector>

#include "core/domain.hpp"

namespace crowdship {

std::vector<Stop> without_request(std::span<const Stop> stops, int request);
std::vector<Stop> with_appended(std::span<const Stop> stops, int request);
// Inserts the pickup so that it lands at index `pickup_at` and the delivery at
// index `delivery_at` (> pickup_at) of the resulting sequence.
std::vector<Stop> with_inserted(std::span<const Stop> stops, int request, std::size_t pickup_at,
                                std::size_t delivery_at);

// Cost-minimising placement of `request`'s stops in `route`, keeping the relative
// order of all other stops. The current placement wins ties.
RoutePlan intra_route_optimize(const EpochInstance& instance, const RoutePlan& route, int request);

// For each pickup position in `route` (which must not contain `request`), the
// placement with the best delivery position after it. The last entry is the
// plain end-of-route append.
std::vector<RoutePlan> pickup_position_variants(const EpochInstance& instance,
                                                const RoutePlan& route, int request);

// Candidate pruning for moving `request` onto `target` (which does not yet
// contain it). Returns false when the move should be discarded:
//  - the request cannot be delivered on time even when served first,
//  - no node of the target route is within the pickup threshold,
//  - the target courier's availability ends before the request appears.
bool admissible_target(const EpochInstance& instance, const RoutePlan& target, int request);

// Appends `request` to `route` (optionally followed by an intra-route
// optimisation) and returns the plan if it is strictly feasible and the pickup
// lies within the threshold of the route before insertion.
std::optional<RoutePlan> feasible_insertion(const EpochInstance& instance, const RoutePlan& route,
                                            int request, bool optimize);

// Movable requests currently on `route`, in stop order.
std::vector<int> movable_requests(const EpochInstance& instance, const RoutePlan& route);

}  // namespace crowdship
