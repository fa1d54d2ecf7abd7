#include "core/relocation_virtual.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "core/mtamp.hpp"
#include "core/routing.hpp"

namespace crowdship::relocation {

namespace {

constexpr double kTolerance = 1e-9;

bool by_budget(const RelocatableCourier& a, const RelocatableCourier& b) {
  if (a.budget != b.budget) return a.budget > b.budget;
  return a.id < b.id;
}

// A one-courier instance standing in for the cluster's representative.
EpochInstance job_instance(const Cluster& cluster, std::span<const Request> pool,
                           const JobRules& rules) {
  EpochInstance inst;
  inst.now = rules.now;
  inst.requests.assign(pool.begin(), pool.end());
  inst.movable.assign(pool.size(), 1);
  inst.params = rules.params;
  Courier c;
  c.id = -1;
  c.entry_point = cluster.centroid;
  c.current_point = cluster.centroid;
  c.entry_time = rules.now;
  c.available_until = rules.now + cluster.budget;
  c.speed = rules.speed;
  c.capacity = rules.capacity;
  inst.couriers.push_back({c, 0.0});
  return inst;
}

double extension_limit(const JobRules& rules) { return rules.pickup_threshold / rules.speed * 60.0; }

}  // namespace

std::vector<RelocatableCourier> pick_relocatable(
    const FlowPlan& flow, const std::vector<std::vector<RelocatableCourier>>& idle_by_zone) {
  std::vector<RelocatableCourier> out;
  if (flow.skipped) return out;
  if (idle_by_zone.size() != flow.zones) throw std::invalid_argument("zone count mismatch");
  for (std::size_t r = 0; r < flow.zones; ++r) {
    const int leaving = flow.outflow(r);
    if (leaving == 0) continue;
    std::vector<RelocatableCourier> zone = idle_by_zone[r];
    if (static_cast<int>(zone.size()) < leaving) {
      throw std::logic_error("relocation outflow exceeds the idle couriers of a zone");
    }
    std::sort(zone.begin(), zone.end(), by_budget);
    out.insert(out.end(), zone.begin(), zone.begin() + leaving);
  }
  return out;
}

double courier_dissimilarity(const RelocatableCourier& a, const RelocatableCourier& b,
                             double speed_mph) {
  return distance(a.location, b.location) + speed_mph * std::abs(a.budget - b.budget) / 60.0;
}

std::vector<Cluster> ah_cluster(std::span<const RelocatableCourier> couriers, double psi,
                                double speed_mph) {
  const std::size_t n = couriers.size();
  std::vector<std::vector<int>> members(n);
  std::vector<double> d(n * n, 0.0);
  std::vector<char> active(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {static_cast<int>(i)};
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = courier_dissimilarity(couriers[i], couriers[j], speed_mph);
    }
  }

  for (std::size_t left = n; left > 1; --left) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && d[i * n + j] < best) {
          best = d[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    if (best > psi) break;
    const double wi = static_cast<double>(members[bi].size());
    const double wj = static_cast<double>(members[bj].size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double merged = (wi * d[bi * n + k] + wj * d[bj * n + k]) / (wi + wj);
      d[bi * n + k] = merged;
      d[k * n + bi] = merged;
    }
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    active[bj] = 0;
  }

  std::vector<Cluster> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    Cluster c;
    c.members = members[i];
    for (int m : c.members) {
      c.centroid.x += couriers[m].location.x;
      c.centroid.y += couriers[m].location.y;
      c.budget += couriers[m].budget;
    }
    const double size = static_cast<double>(c.members.size());
    c.centroid.x /= size;
    c.centroid.y /= size;
    c.budget /= size;
    out.push_back(std::move(c));
  }
  return out;
}

double first_pickup_limit(const JobRules& rules) {
  return rules.step + rules.pickup_threshold / rules.speed * 60.0;
}

bool job_valid(const FeasibleJob& job, const Cluster& cluster, std::span<const Request> pool,
               const JobRules& rules) {
  if (job.stops.empty() || job.stops.size() != 2 * job.requests.size()) return false;
  std::vector<int> state(pool.size(), 0);  // 0 unseen, 1 picked, 2 delivered
  for (const Stop& s : job.stops) {
    if (s.request < 0 || static_cast<std::size_t>(s.request) >= pool.size()) return false;
    int& st = state[static_cast<std::size_t>(s.request)];
    if (s.kind == StopKind::pickup) {
      if (st != 0) return false;
      st = 1;
    } else {
      if (st != 1) return false;
      st = 2;
    }
  }
  std::vector<int> served;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (state[i] == 1) return false;
    if (state[i] == 2) served.push_back(static_cast<int>(i));
  }
  if (served != job.requests) return false;
  if (job.stops.front().kind != StopKind::pickup) return false;

  const double end_of_budget = rules.now + cluster.budget;
  Point at = cluster.centroid;
  double t = rules.now;
  double load = 0.0;
  for (std::size_t i = 0; i < job.stops.size(); ++i) {
    const Stop& s = job.stops[i];
    const Request& r = pool[static_cast<std::size_t>(s.request)];
    const Point& next = s.kind == StopKind::pickup ? r.pickup : r.delivery;
    const double leg = travel_minutes(at, next, rules.speed);
    if (i == 0 && leg > first_pickup_limit(rules) + kTolerance) return false;
    t += leg;
    at = next;
    if (s.kind == StopKind::pickup) {
      load += r.weight;
      if (load > rules.capacity + kTolerance) return false;
    } else {
      load -= r.weight;
      if (t > r.deadline() + kTolerance) return false;
    }
  }
  if (t > end_of_budget + kTolerance) return false;
  return std::abs((t - rules.now) - job.duration) <= 1e-6;
}

std::vector<FeasibleJob> form_jobs(const Cluster& cluster, std::span<const Request> pool,
                                   const JobRules& rules, Rng& rng) {
  std::vector<FeasibleJob> jobs;
  if (pool.empty()) return jobs;
  const EpochInstance inst = job_instance(cluster, pool, rules);
  const double end_of_budget = rules.now + cluster.budget;
  std::set<std::vector<int>> known;

  for (std::size_t i = 0; i < pool.size(); ++i) {
    const Request& r = pool[i];
    const double reach = travel_minutes(cluster.centroid, r.pickup, rules.speed);
    const double omega = rules.now + reach + travel_minutes(r.pickup, r.delivery, rules.speed);
    if (omega > std::min(r.deadline(), end_of_budget) + kTolerance) continue;
    if (reach > first_pickup_limit(rules) + kTolerance) continue;
    if (r.weight > rules.capacity + kTolerance) continue;
    const int id = static_cast<int>(i);
    jobs.push_back({{id}, {{id, StopKind::pickup}, {id, StopKind::delivery}}, omega - rules.now});
    known.insert({id});
  }
  if (jobs.empty()) return jobs;

  const int rounds = std::min(3 * static_cast<int>(jobs.size()), rules.max_extensions);
  for (int n = 0; n < rounds; ++n) {
    std::vector<double> durations;
    durations.reserve(jobs.size());
    for (const FeasibleJob& j : jobs) durations.push_back(j.duration);
    const double mean =
        std::accumulate(durations.begin(), durations.end(), 0.0) / static_cast<double>(jobs.size());
    const std::size_t pick = mtamp::select_index(durations, mean, rules.params.alpha, rng);
    const FeasibleJob sigma = jobs[pick];

    const Stop& last = sigma.stops.back();
    const Point end_point = pool[static_cast<std::size_t>(last.request)].delivery;
    const double t = rules.now + sigma.duration;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const int id = static_cast<int>(i);
      if (std::binary_search(sigma.requests.begin(), sigma.requests.end(), id)) continue;
      const Request& r = pool[i];
      const double reach = travel_minutes(end_point, r.pickup, rules.speed);
      const double omega = t + reach + travel_minutes(r.pickup, r.delivery, rules.speed);
      if (omega > std::min(r.deadline(), end_of_budget) + kTolerance) continue;
      if (reach > extension_limit(rules) + kTolerance) continue;
      if (r.weight > rules.capacity + kTolerance) continue;
      std::vector<int> requests = sigma.requests;
      requests.insert(std::upper_bound(requests.begin(), requests.end(), id), id);
      if (known.contains(requests)) continue;

      RoutePlan appended = schedule_unchecked(inst, 0, with_appended(sigma.stops, id));
      RoutePlan improved = intra_route_optimize(inst, appended, id);
      FeasibleJob grown{requests, improved.stops, improved.completion - rules.now};
      if (!job_valid(grown, cluster, pool, rules)) {
        grown.stops = appended.stops;
        grown.duration = appended.completion - rules.now;
      }
      known.insert(requests);
      jobs.push_back(std::move(grown));
      break;
    }
  }
  return jobs;
}

double assignment_value(const MkpInstance& instance, std::size_t job, std::size_t cluster,
                        Objective objective) {
  const MkpJob& j = instance.jobs[job];
  if (objective == Objective::count) return static_cast<double>(j.requests.size());
  double value = 0.0;
  for (int i : j.requests) value += instance.request_value[static_cast<std::size_t>(i)];
  return value - j.cost[cluster].value_or(0.0);
}

double assignment_objective(const MkpInstance& instance, std::span<const int> cluster_of_job,
                            Objective objective) {
  double total = 0.0;
  for (std::size_t j = 0; j < cluster_of_job.size(); ++j) {
    if (cluster_of_job[j] >= 0) {
      total += assignment_value(instance, j, static_cast<std::size_t>(cluster_of_job[j]), objective);
    }
  }
  return total;
}

namespace {

class KnapsackSearch {
 public:
  KnapsackSearch(const MkpInstance& instance, Objective objective, std::uint64_t node_limit)
      : instance_(instance), node_limit_(node_limit), capacity_(instance.capacity) {
    const std::size_t clusters = instance.capacity.size();
    for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
      const MkpJob& job = instance.jobs[j];
      if (job.requests.empty() || job.cost.size() != clusters) {
        throw std::invalid_argument("malformed knapsack job");
      }
      for (int r : job.requests) {
        if (r < 0 || static_cast<std::size_t>(r) >= instance.request_value.size()) {
          throw std::invalid_argument("job refers to an unknown request");
        }
      }
      Item item{j, {}, 0.0};
      for (std::size_t k = 0; k < clusters; ++k) {
        if (!job.cost[k] || instance.capacity[k] <= 0) continue;
        const double v = assignment_value(instance, j, k, objective);
        if (v > kTolerance) item.options.emplace_back(v, k);
      }
      if (item.options.empty()) continue;
      std::sort(item.options.begin(), item.options.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      item.best = item.options.front().first;
      items_.push_back(std::move(item));
    }
    std::stable_sort(items_.begin(), items_.end(),
                     [](const Item& a, const Item& b) { return a.best > b.best; });
    used_.assign(instance.request_value.size(), 0);
    choice_.assign(items_.size(), -1);
    best_choice_ = choice_;
    density_.assign(instance.request_value.size(), 0.0);
  }

  VirtualAssignment run() {
    dfs(0, 0.0);
    VirtualAssignment out;
    out.cluster_of_job.assign(instance_.jobs.size(), -1);
    for (std::size_t p = 0; p < items_.size(); ++p) {
      if (best_choice_[p] >= 0) out.cluster_of_job[items_[p].job] = best_choice_[p];
    }
    out.optimal = nodes_ <= node_limit_;
    return out;
  }

 private:
  struct Item {
    std::size_t job;
    std::vector<std::pair<double, std::size_t>> options;  // (value, cluster), best first
    double best;
  };

  bool eligible(const Item& item) const {
    for (int r : instance_.jobs[item.job].requests) {
      if (used_[static_cast<std::size_t>(r)]) return false;
    }
    for (const auto& [v, k] : item.options) {
      if (capacity_[k] > 0) return true;
    }
    return false;
  }

  double bound(std::size_t pos) {
    long slots = 0;
    for (int c : capacity_) slots += std::max(c, 0);
    double top = 0.0;
    long taken = 0;
    std::fill(density_.begin(), density_.end(), 0.0);
    for (std::size_t p = pos; p < items_.size(); ++p) {
      const Item& item = items_[p];
      if (!eligible(item)) continue;
      if (taken < slots) {
        top += item.best;
        ++taken;
      }
      const auto& requests = instance_.jobs[item.job].requests;
      const double share = item.best / static_cast<double>(requests.size());
      for (int r : requests) {
        double& d = density_[static_cast<std::size_t>(r)];
        d = std::max(d, share);
      }
    }
    const double spread = std::accumulate(density_.begin(), density_.end(), 0.0);
    return std::min(top, spread);
  }

  void dfs(std::size_t pos, double value) {
    if (++nodes_ > node_limit_) return;
    if (value > best_value_ + kTolerance) {
      best_value_ = value;
      best_choice_ = choice_;
    }
    if (pos == items_.size()) return;
    if (value + bound(pos) <= best_value_ + kTolerance) return;

    const Item& item = items_[pos];
    if (eligible(item)) {
      const auto& requests = instance_.jobs[item.job].requests;
      for (int r : requests) used_[static_cast<std::size_t>(r)] = 1;
      for (const auto& [v, k] : item.options) {
        if (capacity_[k] <= 0) continue;
        --capacity_[k];
        choice_[pos] = static_cast<int>(k);
        dfs(pos + 1, value + v);
        choice_[pos] = -1;
        ++capacity_[k];
      }
      for (int r : requests) used_[static_cast<std::size_t>(r)] = 0;
    }
    dfs(pos + 1, value);
  }

  const MkpInstance& instance_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
  std::vector<Item> items_;
  std::vector<int> capacity_;
  std::vector<char> used_;
  std::vector<int> choice_;
  std::vector<int> best_choice_;
  std::vector<double> density_;
  double best_value_ = 0.0;
};

}  // namespace

VirtualAssignment solve_virtual(const MkpInstance& instance, Objective objective,
                                std::uint64_t node_limit) {
  VirtualAssignment out;
  out.cluster_of_job.assign(instance.jobs.size(), -1);
  if (instance.jobs.empty() || instance.capacity.empty()) return out;
  out = KnapsackSearch(instance, objective, node_limit).run();
  out.objective = assignment_objective(instance, out.cluster_of_job, objective);
  return out;
}

std::vector<RelocationOrder> emit_orders(std::span<const RelocatableCourier> couriers,
                                         const Cluster& cluster,
                                         std::span<const FeasibleJob> jobs,
                                         std::span<const int> assigned_jobs,
                                         std::span<const Request> pool, Rng& rng) {
  std::vector<RelocatableCourier> members;
  for (int m : cluster.members) members.push_back(couriers[static_cast<std::size_t>(m)]);
  std::sort(members.begin(), members.end(), by_budget);
  std::vector<int> open(assigned_jobs.begin(), assigned_jobs.end());

  std::vector<RelocationOrder> out;
  for (const RelocatableCourier& c : members) {
    if (open.empty()) break;
    std::uniform_int_distribution<std::size_t> draw(0, open.size() - 1);
    const std::size_t i = draw(rng);
    const int job = open[i];
    open.erase(open.begin() + static_cast<long>(i));
    const Stop& first = jobs[static_cast<std::size_t>(job)].stops.front();
    out.push_back({c.id, pool[static_cast<std::size_t>(first.request)].pickup, job});
  }
  return out;
}

}  // namespace crowdship::relocation
