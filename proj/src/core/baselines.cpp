#include "core/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "core/mtamp.hpp"
#include "core/rng.hpp"
#include "core/routing.hpp"

namespace crowdship::baselines {

namespace {

constexpr double kTolerance = 1e-9;

struct Neighbour {
  RoutePlan first;
  std::optional<RoutePlan> second;
  double cost = 0.0;
  int request = -1;
  int from = -1;
  int to = -1;  // equals `from` for an intra-route reposition
};

// Random single-request relocation or intra-route reposition.
class MoveSampler {
 public:
  explicit MoveSampler(const EpochInstance& instance) : instance_(instance) {}

  // False when the solution has no movable request at all.
  bool refresh(const Solution& s) {
    pairs_.clear();
    for (std::size_t k = 0; k < s.routes.size(); ++k) {
      for (int r : movable_requests(instance_, *s.routes[k])) {
        pairs_.emplace_back(static_cast<int>(k), r);
      }
    }
    return !pairs_.empty();
  }

  std::optional<Neighbour> sample(const Solution& s, Rng& rng) const {
    if (pairs_.empty()) return std::nullopt;
    const CostParams& params = instance_.params;
    std::uniform_int_distribution<std::size_t> pick_pair(0, pairs_.size() - 1);
    const auto [k, r] = pairs_[pick_pair(rng)];
    const RoutePlan& source = s.route(k);
    std::vector<Stop> rest = without_request(source.stops, r);
    const int routes = static_cast<int>(s.routes.size());

    if (routes > 1 && uniform01(rng) < 0.5) {
      std::uniform_int_distribution<int> pick_route(0, routes - 2);
      int to = pick_route(rng);
      if (to >= k) ++to;
      const RoutePlan& target = s.route(to);
      if (!admissible_target(instance_, target, r)) return std::nullopt;
      if (pickup_distance(instance_, target, r) > params.pickup_threshold + kTolerance) {
        return std::nullopt;
      }
      Neighbour n;
      n.first = schedule_unchecked(instance_, k, std::move(rest));
      n.second = intra_route_optimize(
          instance_, schedule_unchecked(instance_, to, with_appended(target.stops, r)), r);
      n.cost = s.cost.total - source.contribution(params) - target.contribution(params) +
               n.first.contribution(params) + n.second->contribution(params);
      n.request = r;
      n.from = k;
      n.to = to;
      return n;
    }

    const int m = static_cast<int>(rest.size());
    std::uniform_int_distribution<int> pick_p(0, m);
    const int p = pick_p(rng);
    std::uniform_int_distribution<int> pick_q(p + 1, m + 1);
    const int q = pick_q(rng);
    Neighbour n;
    n.first = schedule_unchecked(instance_, k,
                                 with_inserted(rest, r, static_cast<std::size_t>(p),
                                               static_cast<std::size_t>(q)));
    n.cost = s.cost.total - source.contribution(params) + n.first.contribution(params);
    n.request = r;
    n.from = k;
    n.to = k;
    return n;
  }

 private:
  const EpochInstance& instance_;
  std::vector<std::pair<int, int>> pairs_;  // (route, request)
};

Solution apply(const Solution& s, Neighbour n, const CostParams& params) {
  if (n.second) return with_routes(s, std::move(n.first), std::move(*n.second), params);
  return with_route(s, std::move(n.first), params);
}

class Clock {
 public:
  explicit Clock(double cap) : cap_(cap), start_(std::chrono::steady_clock::now()) {}
  bool expired() const {
    if (cap_ <= 0.0) return false;
    const std::chrono::duration<double> used = std::chrono::steady_clock::now() - start_;
    return used.count() >= cap_;
  }

 private:
  double cap_;
  std::chrono::steady_clock::time_point start_;
};

bool better_feasible(const Solution& candidate, const Solution& incumbent) {
  if (!candidate.cost.feasible()) return false;
  if (!incumbent.cost.feasible()) return true;
  return candidate.cost.total < incumbent.cost.total - kTolerance;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::insertion: return "insertion";
    case Method::insertion_intra: return "insertion-intra";
    case Method::simulated_annealing: return "sa";
    case Method::reactive_tabu: return "rts";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::insertion, Method::insertion_intra, Method::simulated_annealing,
                   Method::reactive_tabu}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

Outcome insertion(const EpochInstance& instance, const Solution& base, bool optimize) {
  Solution s = base;
  std::vector<int> order = base.unassigned;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Request& ra = instance.request(a);
    const Request& rb = instance.request(b);
    if (ra.release != rb.release) return ra.release < rb.release;
    return ra.id < rb.id;
  });

  Outcome out;
  std::vector<int> left;
  for (int r : order) {
    int best_k = -1;
    double best_delta = std::numeric_limits<double>::infinity();
    std::optional<RoutePlan> best_plan;
    for (std::size_t k = 0; k < s.routes.size(); ++k) {
      const RoutePlan& route = *s.routes[k];
      auto plan = feasible_insertion(instance, route, r, optimize);
      ++out.evaluations;
      if (!plan) continue;
      const double delta = plan->contribution(instance.params) - route.contribution(instance.params);
      if (delta < best_delta - kTolerance) {
        best_delta = delta;
        best_k = static_cast<int>(k);
        best_plan = std::move(plan);
      }
    }
    if (best_k < 0) {
      left.push_back(r);
    } else {
      s.routes[best_k] = std::make_shared<const RoutePlan>(std::move(*best_plan));
    }
  }
  out.solution = make_solution(std::move(s.routes), std::move(left), instance.params);
  return out;
}

Outcome simulated_annealing(const EpochInstance& instance, const Solution& start,
                            const Options& options) {
  Outcome out;
  out.solution = start;
  MoveSampler sampler(instance);
  if (!sampler.refresh(start)) return out;

  Rng rng(derive_seed(options.seed, {0x5a}));
  const Clock clock(options.time_cap_seconds);
  Solution current = start;
  double temperature = std::max(options.sa_initial_ratio * start.cost.total, 1e-6);
  std::uint64_t attempts = 0;
  while (out.evaluations < options.max_evaluations && attempts < 20 * options.max_evaluations + 100 &&
         !clock.expired()) {
    ++attempts;
    auto n = sampler.sample(current, rng);
    if (!n) continue;
    ++out.evaluations;
    const double delta = n->cost - current.cost.total;
    if (delta <= 0.0 || uniform01(rng) < std::exp(-delta / temperature)) {
      current = apply(current, std::move(*n), instance.params);
      sampler.refresh(current);
      if (better_feasible(current, out.solution)) out.solution = current;
    }
    temperature *= options.sa_cooling;
  }
  return out;
}

Outcome reactive_tabu(const EpochInstance& instance, const Solution& start,
                      const Options& options) {
  Outcome out;
  out.solution = start;
  MoveSampler sampler(instance);
  if (!sampler.refresh(start)) return out;

  Rng rng(derive_seed(options.seed, {0x7b}));
  const Clock clock(options.time_cap_seconds);
  Solution current = start;
  std::size_t movable = 0;
  for (const auto& route : start.routes) movable += movable_requests(instance, *route).size();
  const double max_tenure = std::max<double>(1.0, static_cast<double>(movable));
  double tenure = 1.0;
  std::map<std::pair<int, int>, long> tabu_until;  // (request, route) -> iteration
  std::unordered_map<mtamp::Fingerprint, int, mtamp::FingerprintHash> visits;
  ++visits[mtamp::fingerprint(current)];

  std::uint64_t attempts = 0;
  for (long iteration = 0;
       out.evaluations < options.max_evaluations && attempts < 20 * options.max_evaluations + 100 &&
       !clock.expired();
       ++iteration) {
    std::optional<Neighbour> chosen;
    for (int i = 0; i < options.rts_sample && out.evaluations < options.max_evaluations; ++i) {
      ++attempts;
      auto n = sampler.sample(current, rng);
      if (!n) continue;
      ++out.evaluations;
      const auto it = tabu_until.find({n->request, n->to});
      const bool tabu = n->to != n->from && it != tabu_until.end() && it->second > iteration;
      const bool aspires = n->cost < out.solution.cost.total - kTolerance;
      if (tabu && !aspires) continue;
      if (!chosen || n->cost < chosen->cost) chosen = std::move(n);
    }
    if (!chosen) continue;

    const int request = chosen->request;
    const int from = chosen->from;
    const bool relocation = chosen->to != chosen->from;
    current = apply(current, std::move(*chosen), instance.params);
    sampler.refresh(current);
    if (relocation) tabu_until[{request, from}] = iteration + static_cast<long>(std::ceil(tenure));
    if (visits[mtamp::fingerprint(current)]++ > 0) {
      tenure = std::min(max_tenure, tenure * 2.0);
    } else {
      tenure = std::max(1.0, tenure * 0.9);
    }
    if (better_feasible(current, out.solution)) out.solution = current;
  }
  return out;
}

Outcome baseline_assign(Method method, const EpochInstance& instance, const Solution& base,
                        const Options& options) {
  switch (method) {
    case Method::insertion: return insertion(instance, base, false);
    case Method::insertion_intra: return insertion(instance, base, true);
    case Method::simulated_annealing:
    case Method::reactive_tabu: {
      Outcome seed = insertion(instance, base, true);
      Outcome search = method == Method::simulated_annealing
                           ? simulated_annealing(instance, seed.solution, options)
                           : reactive_tabu(instance, seed.solution, options);
      search.evaluations += seed.evaluations;
      return search;
    }
  }
  throw std::invalid_argument("unknown baseline method");
}

}  // namespace crowdship::baselines
