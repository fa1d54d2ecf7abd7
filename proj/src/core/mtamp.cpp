#include "core/mtamp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/routing.hpp"

namespace crowdship::mtamp {

namespace {

constexpr double kTolerance = 1e-9;

std::uint64_t finalize(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  return x ^ (x >> 33);
}

// Better-than relation used for the incumbent: strictly feasible solutions beat
// infeasible ones, then fewer unassigned, then lower cost.
bool improves(const Solution& candidate, const Solution& incumbent) {
  const bool cf = candidate.cost.feasible();
  const bool inf = incumbent.cost.feasible();
  if (cf != inf) return cf;
  if (!cf) return false;
  if (candidate.unassigned.size() != incumbent.unassigned.size()) {
    return candidate.unassigned.size() < incumbent.unassigned.size();
  }
  return candidate.cost.total < incumbent.cost.total - kTolerance;
}

std::vector<double> costs_of(std::span<const Candidate> items) {
  std::vector<double> out;
  out.reserve(items.size());
  for (const Candidate& c : items) out.push_back(c.solution.cost.total);
  return out;
}

// Probabilistic pick among the CL members that are not tabu; -1 if none.
long select_non_tabu(const SearchContext& ctx, const SearchMemory& memory, Rng& rng) {
  std::vector<double> costs;
  std::vector<std::size_t> index;
  const auto items = memory.candidates.items();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (memory.is_tabu(items[i].key)) continue;
    costs.push_back(items[i].solution.cost.total);
    index.push_back(i);
  }
  if (costs.empty()) return -1;
  return static_cast<long>(index[select_index(costs, ctx.reference_cost(), ctx.params().alpha, rng)]);
}

std::size_t select_any(const SearchContext& ctx, const CandidateList& list, Rng& rng) {
  const auto costs = costs_of(list.items());
  return select_index(costs, ctx.reference_cost(), ctx.params().alpha, rng);
}

void record(SearchContext& ctx, int start, int wave, int phase, const SearchMemory& memory) {
  if (ctx.trace == nullptr) return;
  ctx.trace->push_back({start, wave, phase, memory.memory.size(), memory.candidates.size(),
                        ctx.best().cost.total});
}

}  // namespace

Fingerprint fingerprint(const Solution& solution) {
  Fingerprint f;
  for (const auto& route : solution.routes) {
    if (route->stops.empty()) continue;
    f.lo += finalize(route->signature);
    f.hi += finalize(route->signature ^ 0x2545f4914f6cdd1dULL);
  }
  std::uint64_t u = 0x7a3c5e1f;
  for (int r : solution.unassigned) u = finalize(u ^ static_cast<std::uint64_t>(r));
  f.lo ^= u;
  f.hi ^= finalize(u + 1);
  return f;
}

Candidate make_candidate(Solution solution) {
  const Fingerprint key = fingerprint(solution);
  return {std::move(solution), key};
}

bool CandidateList::add(const Candidate& c) {
  if (!keys_.insert(c.key).second) return false;
  items_.push_back(c);
  return true;
}

bool SearchMemory::is_tabu(const Fingerprint& key) const {
  const auto it = entries.find(key);
  return it != entries.end() && it->second >= tabu_count;
}

void SearchMemory::enter(const Candidate& c) {
  memory.push_back(c);
  ++entries[c.key];
}

SearchContext::SearchContext(const EpochInstance& instance, const Solution& initial)
    : instance_(&instance) {
  set_reference(initial);
}

void SearchContext::set_reference(const Solution& initial) {
  reference_cost_ = initial.cost.total;
  best_ = initial;
}

void SearchContext::offer(const Solution& s) {
  if (improves(s, best_)) best_ = s;
}

std::vector<double> selection_probabilities(std::span<const double> costs, double reference_cost,
                                            double alpha) {
  std::vector<double> p(costs.size(), 0.0);
  if (costs.empty()) return p;
  if (!(reference_cost > 0.0)) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(costs.size()));
    return p;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < costs.size(); ++i) {
    p[i] = alpha * (reference_cost - costs[i]) / reference_cost;
    top = std::max(top, p[i]);
  }
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

std::size_t select_index(std::span<const double> costs, double reference_cost, double alpha,
                         Rng& rng) {
  if (costs.empty()) throw std::invalid_argument("selection from an empty candidate list");
  if (costs.size() == 1) return 0;
  const auto p = selection_probabilities(costs, reference_cost, alpha);
  double u = uniform01(rng);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (u < p[i]) return i;
    u -= p[i];
  }
  return p.size() - 1;
}

std::vector<Candidate> generate_candidate_list(SearchContext& ctx, const Solution& solution,
                                               int wave) {
  std::vector<Candidate> out;
  if (solution.routes.size() < 2) return out;
  const EpochInstance& instance = ctx.instance();
  const CostParams& params = ctx.params();
  const RoutePlan& source = solution.route(wave);
  const double limit = ctx.reference_cost() > 0.0
                           ? (1.0 + params.discard_ratio) * ctx.reference_cost()
                           : std::numeric_limits<double>::infinity();

  std::unordered_set<Fingerprint, FingerprintHash> seen;
  for (int r : movable_requests(instance, source)) {
    RoutePlan from = schedule_unchecked(instance, wave, without_request(source.stops, r));
    const double base =
        solution.cost.total - source.contribution(params) + from.contribution(params);
    for (std::size_t m = 0; m < solution.routes.size(); ++m) {
      if (static_cast<int>(m) == wave) continue;
      const RoutePlan& target = solution.route(static_cast<int>(m));
      if (!admissible_target(instance, target, r)) continue;
      for (RoutePlan& variant : pickup_position_variants(instance, target, r)) {
        ++ctx.evaluations;
        const double cost = base - target.contribution(params) + variant.contribution(params);
        if (cost > limit + kTolerance) continue;
        Candidate c = make_candidate(with_routes(solution, from, std::move(variant), params));
        if (seen.insert(c.key).second) out.push_back(std::move(c));
      }
    }
  }
  return out;
}

ForwardMove forward_move(SearchContext& ctx, const Candidate& selected, int wave, Rng& rng) {
  const EpochInstance& instance = ctx.instance();
  const CostParams& params = ctx.params();
  const Solution& s = selected.solution;
  const RoutePlan& source = s.route(wave);

  struct Option {
    std::size_t from;
    RoutePlan to;
  };
  std::vector<RoutePlan> froms;
  std::vector<int> moved;
  std::vector<Option> options;
  std::vector<double> costs;
  for (int r : movable_requests(instance, source)) {
    RoutePlan from = schedule_unchecked(instance, wave, without_request(source.stops, r));
    const double base = s.cost.total - source.contribution(params) + from.contribution(params);
    bool used = false;
    for (std::size_t m = 0; m < s.routes.size(); ++m) {
      if (static_cast<int>(m) == wave) continue;
      const RoutePlan& target = s.route(static_cast<int>(m));
      if (!admissible_target(instance, target, r)) continue;
      RoutePlan to = schedule_unchecked(instance, static_cast<int>(m), with_appended(target.stops, r));
      ++ctx.evaluations;
      costs.push_back(base - target.contribution(params) + to.contribution(params));
      options.push_back({froms.size(), std::move(to)});
      used = true;
    }
    if (used) {
      froms.push_back(std::move(from));
      moved.push_back(r);
    }
  }
  if (options.empty()) return {selected, std::nullopt};

  const Option& pick = options[select_index(costs, ctx.reference_cost(), params.alpha, rng)];
  RoutePlan improved = intra_route_optimize(instance, pick.to, moved[pick.from]);
  ++ctx.evaluations;
  Candidate next = make_candidate(with_routes(s, froms[pick.from], std::move(improved), params));
  if (next.solution.cost.total < s.cost.total - kTolerance) return {next, next};
  return {selected, std::move(next)};
}

PhaseSchedule plan_schedule(int delta, int eta) {
  PhaseSchedule out;
  if (delta <= 0) return out;
  if (eta < 2) throw std::invalid_argument("eta must be at least 2");
  out.delta = delta;
  out.phases = (delta + eta - 1) / eta;
  const long b = out.phases + 1;
  for (int q = 1; q <= out.phases; ++q) {
    const long a = static_cast<long>(q + 1) * delta;
    out.sizes.push_back(static_cast<int>((2 * a + b) / (2 * b)));  // round half up of a / b
  }
  out.first_step = std::max(1, out.sizes.front() - 1);
  return out;
}

std::vector<int> step_sizes(int memory_size, int first_step) {
  std::vector<int> out;
  if (memory_size <= 0) return out;
  const int d1 = std::clamp(first_step, 1, memory_size);
  const int h = (memory_size + d1 - 1) / d1;
  out.push_back(d1);
  int done = d1;
  for (int i = 2; i <= h; ++i) {
    const int left = memory_size - done;
    const int slots = h - i + 1;
    const int d = (left + slots - 1) / slots;
    out.push_back(d);
    done += d;
  }
  return out;
}

int sizing_run(SearchContext& ctx, const SearchMemory& memory, int wave, Rng& rng) {
  CandidateList list = memory.candidates;
  int size = static_cast<int>(memory.memory.size());
  const int cap = std::max(ctx.params().max_memory, size);
  while (size < cap && !list.empty()) {
    const Candidate selected = list[select_any(ctx, list, rng)];
    ForwardMove move = forward_move(ctx, selected, wave, rng);
    ++size;
    if (!move.explored) break;
    list.add(*move.explored);
  }
  return size;
}

void vertical_phase(SearchContext& ctx, SearchMemory& memory, int target_size, int wave, Rng& rng) {
  while (static_cast<int>(memory.memory.size()) < target_size && !memory.candidates.empty()) {
    const Candidate selected = memory.candidates[select_any(ctx, memory.candidates, rng)];
    ForwardMove move = forward_move(ctx, selected, wave, rng);
    if (move.explored) memory.candidates.add(*move.explored);
    memory.enter(move.result);
    ctx.offer(move.result.solution);
  }
}

void horizontal_phase(SearchContext& ctx, SearchMemory& memory, std::span<const int> steps,
                      Rng& rng) {
  for (int d : steps) {
    int removed = 0;
    for (int j = 0; j < d && !memory.memory.empty(); ++j) {
      Candidate front = std::move(memory.memory.front());
      memory.memory.pop_front();
      if (memory.is_tabu(front.key)) {
        memory.memory.push_back(std::move(front));
      } else {
        memory.candidates.add(front);
        ++removed;
      }
    }
    for (int l = 0; l < removed; ++l) {
      const long pick = select_non_tabu(ctx, memory, rng);
      if (pick < 0) break;
      const Candidate chosen = memory.candidates[static_cast<std::size_t>(pick)];
      memory.enter(chosen);
      ctx.offer(chosen.solution);
    }
  }
}

void concluding_phase(SearchContext& ctx, SearchMemory& memory, int wave, Rng& rng) {
  const std::size_t cap = 2 * std::max<std::size_t>(memory.memory.size(), 1) + 10;
  std::size_t rotations = 0;
  for (std::size_t step = 0; step < cap; ++step) {
    const auto items = memory.candidates.items();
    if (std::none_of(items.begin(), items.end(),
                     [&](const Candidate& c) { return !memory.is_tabu(c.key); })) {
      return;
    }

    if (!memory.memory.empty()) {
      Candidate front = std::move(memory.memory.front());
      memory.memory.pop_front();
      if (memory.is_tabu(front.key)) {
        memory.memory.push_back(std::move(front));
        if (++rotations >= memory.memory.size()) return;
        continue;
      }
      memory.candidates.add(front);
      rotations = 0;
    }

    const long chosen_index = select_non_tabu(ctx, memory, rng);
    const Candidate chosen = memory.candidates[static_cast<std::size_t>(chosen_index)];
    ForwardMove move = forward_move(ctx, chosen, wave, rng);
    if (!move.explored) {
      memory.enter(chosen);
      ctx.offer(chosen.solution);
      return;
    }
    memory.candidates.add(*move.explored);
    memory.enter(move.result);
    ctx.offer(move.result.solution);
  }
}

SearchResult run_mtamp(const EpochInstance& instance, std::span<const Solution> initials,
                       const SearchOptions& options) {
  if (initials.empty()) throw std::invalid_argument("no initial solution");
  SearchResult result;
  result.best = initials.front();
  result.start = 0;

  for (std::size_t j = 0; j < initials.size(); ++j) {
    const Solution& initial = initials[j];
    SearchContext ctx(instance, initial);
    ctx.trace = options.trace;
    SearchMemory memory;
    memory.tabu_count = instance.params.tabu_count;

    const int waves = static_cast<int>(initial.routes.size());
    for (int w = 0; w < waves && waves > 1; ++w) {
      const Solution incumbent = ctx.best();
      if (movable_requests(instance, incumbent.route(w)).empty()) continue;
      std::vector<Candidate> generated = generate_candidate_list(ctx, incumbent, w);
      if (generated.empty() && memory.memory.empty()) continue;

      memory.candidates = CandidateList();
      for (Candidate& c : generated) memory.candidates.add(c);
      for (const Candidate& c : memory.memory) memory.candidates.add(c);

      Rng sizing_rng(derive_seed(options.seed, {0x5151, j, static_cast<std::uint64_t>(w)}));
      const int delta = sizing_run(ctx, memory, w, sizing_rng);
      const PhaseSchedule schedule = plan_schedule(delta, instance.params.eta);
      record(ctx, static_cast<int>(j), w, 0, memory);
      if (schedule.empty()) continue;

      Rng rng(derive_seed(options.seed, {0x6d74, j, static_cast<std::uint64_t>(w)}));
      for (int q = 1; q <= schedule.phases; ++q) {
        const int mu = schedule.sizes[q - 1];
        if (static_cast<int>(memory.memory.size()) < mu) {
          vertical_phase(ctx, memory, mu, w, rng);
        } else {
          const auto steps =
              step_sizes(static_cast<int>(memory.memory.size()), schedule.first_step);
          horizontal_phase(ctx, memory, steps, rng);
        }
        record(ctx, static_cast<int>(j), w, q, memory);
      }
      concluding_phase(ctx, memory, w, rng);
      record(ctx, static_cast<int>(j), w, -1, memory);
    }

    result.evaluations += ctx.evaluations;
    if (j == 0 || improves(ctx.best(), result.best)) {
      result.best = ctx.best();
      result.start = static_cast<int>(j);
    }
  }
  return result;
}

}  // namespace crowdship::mtamp
