#include "core/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <stdexcept>

#include "core/baselines.hpp"
#include "core/construction.hpp"
#include "core/relocation_flow.hpp"
#include "core/relocation_virtual.hpp"
#include "core/routing.hpp"

namespace crowdship::sim {

namespace {

constexpr std::uint64_t kArrivalStream = 0xa1;
constexpr std::uint64_t kSolverStream = 0xb2;
constexpr std::uint64_t kRelocationStream = 0xc3;
constexpr double kTolerance = 1e-9;

int draw_count(double rate, ArrivalLaw law, Rng& rng) {
  if (rate <= 0.0) return 0;
  if (law == ArrivalLaw::poisson) return std::poisson_distribution<int>(rate)(rng);
  const double whole = std::floor(rate);
  return static_cast<int>(whole) + (uniform01(rng) < rate - whole ? 1 : 0);
}

double draw_weight(const ScenarioConfig& c, Rng& rng) {
  if (c.weight_law == WeightLaw::uniform || c.weight_max == c.weight_min) {
    return c.weight_min + (c.weight_max - c.weight_min) * uniform01(rng);
  }
  std::normal_distribution<double> normal(c.weight_mean, c.weight_sd);
  for (int i = 0; i < 10000; ++i) {
    const double w = normal(rng);
    if (w >= c.weight_min && w <= c.weight_max) return w;
  }
  return std::clamp(c.weight_mean, c.weight_min, c.weight_max);
}

Point uniform_in_zone(const ServiceArea& area, ZoneId zone, Rng& rng) {
  const Point o = area.origin(zone);
  const double x = o.x + area.zone_edge() * uniform01(rng);
  const double y = o.y + area.zone_edge() * uniform01(rng);
  return {x, y};
}

Point uniform_in_area(const ServiceArea& area, Rng& rng) {
  const double x = area.width() * uniform01(rng);
  const double y = area.height() * uniform01(rng);
  return {x, y};
}

std::uint64_t mix(std::uint64_t h, double v) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, &v, sizeof bits);
  return derive_seed(h, {bits});
}

struct SimRequest {
  Request r;
  ZoneId zone = 0;
  int courier = -1;
  double done_at = -1.0;
  int terminations = 0;
  bool by_courier = false;
};

struct SimCourier {
  Courier c;
  std::vector<Stop> route;  // Stop::request holds the global request index
  double load = 0.0;
  std::optional<Point> target;     // relocation destination
  double leg_minutes = 0.0;        // paid route travel not yet priced in the event log
  double relocation_minutes = 0.0;  // current relocation, not yet priced
  double route_odometer = 0.0;      // minutes travelled on routes while carrying
  double relocation_odometer = 0.0;
};

class Engine {
 public:
  Engine(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options)
      : cfg_(config),
        area_(config.area()),
        seed_(seed),
        options_(options),
        arrival_rng_(derive_seed(seed, {kArrivalStream})),
        zone_costs_(config.relocation ? relocation::ZoneCosts::from_area(
                                            area_, config.courier_speed, config.params.courier_rate)
                                      : relocation::ZoneCosts()),
        courier_rates_(zone_courier_rates(config, area_)),
        request_rates_(zone_request_rates(config, area_)) {
    report_.seed = seed;
    report_.arrival_checksum = derive_seed(0x5eed, {});
  }

  SeedReport run() {
    const int epochs = cfg_.epochs();
    for (int k = 1; k <= epochs; ++k) {
      const double t = k * cfg_.step;
      advance(t - cfg_.step, t);
      ingest(t - cfg_.step);
      retire(t);
      const auto t0 = std::chrono::steady_clock::now();
      assign(t, k, k == epochs);
      const auto t1 = std::chrono::steady_clock::now();
      if (cfg_.relocation && k < epochs) relocate(t, k);
      const auto t2 = std::chrono::steady_clock::now();
      record_availability(t);
      if (options_.timings) {
        report_.timings.push_back({t, std::chrono::duration<double>(t1 - t0).count(),
                                   std::chrono::duration<double>(t2 - t1).count()});
      }
    }
    const double end = epochs * cfg_.step;
    advance(end, std::numeric_limits<double>::infinity());
    retire(std::numeric_limits<double>::infinity());
    finish();
    return std::move(report_);
  }

 private:
  void log(double t, EventType type, int request, int courier, int from, int to, double cost) {
    report_.events.push_back({t, type, request, courier, from, to, cost});
  }

  double pay(double minutes) const { return minutes / 60.0 * cfg_.params.courier_rate; }

  ZoneId zone_of(const Point& p) const { return area_.zone_of(p); }

  void ingest(double from) {
    Arrivals a = generate_arrivals(cfg_, area_, from, arrival_rng_);
    for (Request& r : a.requests) {
      r.id = static_cast<int>(requests_.size());
      SimRequest s;
      s.r = r;
      s.zone = zone_of(r.pickup);
      requests_.push_back(s);
      log(r.release, EventType::request_arrival, r.id, -1, s.zone, zone_of(r.delivery), 0.0);
      auto& h = report_.arrival_checksum;
      h = mix(mix(mix(mix(mix(mix(h, r.pickup.x), r.pickup.y), r.delivery.x), r.delivery.y), r.release),
              r.weight);
    }
    for (Courier& c : a.couriers) {
      c.id = static_cast<int>(couriers_.size());
      SimCourier s;
      s.c = c;
      couriers_.push_back(s);
      log(c.entry_time, EventType::courier_arrival, -1, c.id, zone_of(c.entry_point), -1, 0.0);
      auto& h = report_.arrival_checksum;
      h = mix(mix(mix(h, c.entry_point.x), c.entry_point.y), c.entry_time);
    }
  }

  void process_stop(SimCourier& s, const Stop& stop, double t) {
    SimRequest& q = requests_[static_cast<std::size_t>(stop.request)];
    const double cost = pay(s.leg_minutes);
    s.leg_minutes = 0.0;
    if (stop.kind == StopKind::pickup) {
      q.r.status = RequestStatus::onboard;
      s.load += q.r.weight;
      log(t, EventType::pickup, q.r.id, s.c.id, q.zone, zone_of(s.c.current_point), cost);
    } else {
      q.r.status = RequestStatus::delivered;
      q.done_at = t;
      q.by_courier = true;
      ++q.terminations;
      s.load -= q.r.weight;
      log(t, EventType::delivery, q.r.id, s.c.id, q.zone, zone_of(s.c.current_point), cost);
    }
  }

  void end_relocation(SimCourier& s, double t) {
    const double cost = pay(s.relocation_minutes);
    log(t, EventType::relocation_end, -1, s.c.id, -1, zone_of(s.c.current_point), cost);
    s.relocation_minutes = 0.0;
    s.target.reset();
  }

  void move(SimCourier& s, double from, double to) {
    Courier& c = s.c;
    if (c.state == CourierState::en_route) {
      double tau = from;
      std::size_t done = 0;
      while (done < s.route.size()) {
        const Stop& stop = s.route[done];
        const Request& r = requests_[static_cast<std::size_t>(stop.request)].r;
        const Point& next = stop.kind == StopKind::pickup ? r.pickup : r.delivery;
        const double leg = travel_minutes(c.current_point, next, c.speed);
        const bool paid = s.load > kTolerance;  // couriers are paid while carrying
        if (tau + leg <= to + kTolerance) {
          tau += leg;
          c.current_point = next;
          if (paid) {
            s.leg_minutes += leg;
            s.route_odometer += leg;
          }
          process_stop(s, stop, tau);
          ++done;
        } else {
          const double dt = to - tau;
          c.current_point = advance_toward(c.current_point, next, dt / 60.0 * c.speed);
          if (paid) {
            s.leg_minutes += dt;
            s.route_odometer += dt;
          }
          break;
        }
      }
      s.route.erase(s.route.begin(), s.route.begin() + static_cast<long>(done));
      if (s.route.empty()) c.state = CourierState::idle;
    } else if (c.state == CourierState::relocating) {
      const double stop_at = std::min(to, std::max(from, c.available_until));
      const double leg = travel_minutes(c.current_point, *s.target, c.speed);
      if (from + leg <= stop_at + kTolerance) {
        c.current_point = *s.target;
        s.relocation_minutes += leg;
        s.relocation_odometer += leg;
        end_relocation(s, from + leg);
        c.state = CourierState::idle;
      } else {
        const double dt = stop_at - from;
        c.current_point = advance_toward(c.current_point, *s.target, dt / 60.0 * c.speed);
        s.relocation_minutes += dt;
        s.relocation_odometer += dt;
        if (stop_at < to) {
          end_relocation(s, stop_at);
          c.state = CourierState::idle;
        }
      }
    }
  }

  void advance(double from, double to) {
    for (SimCourier& s : couriers_) {
      if (s.c.state != CourierState::exited) move(s, from, to);
    }
  }

  void retire(double t) {
    for (SimCourier& s : couriers_) {
      if (s.c.state == CourierState::idle && s.c.available_until <= t + kTolerance) {
        s.c.state = CourierState::exited;
        log(std::min(t, std::max(s.c.available_until, s.c.entry_time)), EventType::courier_exit, -1,
            s.c.id, zone_of(s.c.current_point), -1, 0.0);
      }
    }
  }

  void dispatch_backup(int request, double t, bool expired) {
    SimRequest& q = requests_[static_cast<std::size_t>(request)];
    const double trip = backup_trip_minutes(area_.depot(), q.r, cfg_.params.backup_speed);
    const double cost = trip / 60.0 * cfg_.params.backup_rate;
    q.r.status = expired ? RequestStatus::expired_to_backup : RequestStatus::backup;
    q.done_at = t + trip;
    q.courier = -1;
    ++q.terminations;
    report_.backup_cost += cost;
    log(t, EventType::backup_dispatch, q.r.id, -1, zone_of(area_.depot()), q.zone, cost);
  }

  Solution solve(const EpochInstance& inst, const Solution& base, double t, int epoch) {
    const std::uint64_t solver_seed = derive_seed(seed_, {kSolverStream, static_cast<std::uint64_t>(epoch)});
    auto run_search = [&](std::vector<mtamp::TraceRecord>* trace) {
      std::vector<Solution> initials;
      for (auto method : construction::kInitialMethods) {
        initials.push_back(construction::build_initial(method, inst, base));
      }
      return mtamp::run_mtamp(inst, initials, {solver_seed, trace});
    };

    if (cfg_.solver == SolverKind::mtamp) {
      std::vector<mtamp::TraceRecord> trace;
      auto result = run_search(options_.trace ? &trace : nullptr);
      for (const auto& r : trace) report_.trace.push_back({t, r});
      report_.solver_evaluations += result.evaluations;
      return result.best;
    }

    baselines::Options opt;
    opt.seed = solver_seed;
    opt.time_cap_seconds = cfg_.baseline_time_cap;
    baselines::Method method = baselines::Method::insertion;
    switch (cfg_.solver) {
      case SolverKind::insertion: method = baselines::Method::insertion; break;
      case SolverKind::insertion_intra: method = baselines::Method::insertion_intra; break;
      case SolverKind::simulated_annealing: method = baselines::Method::simulated_annealing; break;
      case SolverKind::reactive_tabu: method = baselines::Method::reactive_tabu; break;
      case SolverKind::mtamp: break;
    }
    if (method == baselines::Method::simulated_annealing || method == baselines::Method::reactive_tabu) {
      opt.max_evaluations =
          cfg_.baseline_iterations > 0 ? cfg_.baseline_iterations : run_search(nullptr).evaluations;
    }
    auto outcome = baselines::baseline_assign(method, inst, base, opt);
    report_.solver_evaluations += outcome.evaluations;
    return outcome.solution;
  }

  void assign(double t, int epoch, bool final_epoch) {
    std::vector<int> active;
    for (std::size_t k = 0; k < couriers_.size(); ++k) {
      if (couriers_[k].c.state != CourierState::exited) active.push_back(static_cast<int>(k));
    }
    std::vector<int> in_play;
    std::vector<int> local(requests_.size(), -1);
    for (std::size_t i = 0; i < requests_.size(); ++i) {
      const RequestStatus st = requests_[i].r.status;
      if (st == RequestStatus::pending || st == RequestStatus::assigned || st == RequestStatus::onboard) {
        local[i] = static_cast<int>(in_play.size());
        in_play.push_back(static_cast<int>(i));
      }
    }

    EpochInstance inst;
    inst.now = t;
    inst.params = cfg_.params;
    for (int g : in_play) {
      inst.requests.push_back(requests_[static_cast<std::size_t>(g)].r);
      inst.movable.push_back(requests_[static_cast<std::size_t>(g)].r.status != RequestStatus::onboard);
    }
    std::vector<std::vector<Stop>> committed;
    for (int k : active) {
      const SimCourier& s = couriers_[static_cast<std::size_t>(k)];
      inst.couriers.push_back({s.c, s.load});
      std::vector<Stop> stops;
      for (const Stop& st : s.route) stops.push_back({local[static_cast<std::size_t>(st.request)], st.kind});
      committed.push_back(std::move(stops));
    }
    std::vector<int> pending;
    for (std::size_t i = 0; i < in_play.size(); ++i) {
      if (inst.requests[i].status == RequestStatus::pending) pending.push_back(static_cast<int>(i));
    }

    std::vector<int> unassigned = pending;
    if (!active.empty()) {
      const Solution base = construction::base_solution(inst, committed, pending);
      const bool movable = std::any_of(inst.movable.begin(), inst.movable.end(), [](char m) { return m; });
      const Solution chosen = movable ? solve(inst, base, t, epoch) : base;
      check_solution(inst, chosen);
      commit(inst, chosen, active, in_play, t);
      unassigned = chosen.unassigned;
    }

    if (final_epoch) {
      for (int i : unassigned) dispatch_backup(in_play[static_cast<std::size_t>(i)], t, true);
      return;
    }
    const auto triage = construction::triage_unassigned(inst, unassigned, area_.depot(), cfg_.step);
    for (int i : triage.backup_now) dispatch_backup(in_play[static_cast<std::size_t>(i)], t, false);
  }

  void check_solution(const EpochInstance& inst, const Solution& s) {
    std::vector<int> seen(inst.requests.size(), 0);
    for (const auto& route : s.routes) {
      if (!route->feasible()) ++report_.infeasible_commits;
      for (const Stop& st : route->stops) {
        if (st.kind == StopKind::delivery) ++seen[static_cast<std::size_t>(st.request)];
      }
    }
    for (int i : s.unassigned) {
      if (!inst.movable[static_cast<std::size_t>(i)]) {
        throw std::runtime_error("solver dropped an onboard request");
      }
      ++seen[static_cast<std::size_t>(i)];
    }
    for (int n : seen) {
      if (n != 1) throw std::runtime_error("solver lost or duplicated a request");
    }
    if (report_.infeasible_commits > 0) {
      throw std::runtime_error("solver produced an infeasible route");
    }
  }

  void commit(const EpochInstance& inst, const Solution& s, const std::vector<int>& active,
              const std::vector<int>& in_play, double t) {
    (void)inst;
    for (std::size_t k = 0; k < active.size(); ++k) {
      SimCourier& c = couriers_[static_cast<std::size_t>(active[k])];
      std::vector<Stop> stops;
      for (const Stop& st : s.route(static_cast<int>(k)).stops) {
        const int g = in_play[static_cast<std::size_t>(st.request)];
        stops.push_back({g, st.kind});
        SimRequest& q = requests_[static_cast<std::size_t>(g)];
        if (st.kind == StopKind::pickup) {
          if (q.courier != c.c.id) {
            log(t, EventType::assignment, q.r.id, c.c.id, q.zone, zone_of(c.c.current_point), 0.0);
          }
          q.r.status = RequestStatus::assigned;
        }
        q.courier = c.c.id;
      }
      const bool had_route = !c.route.empty();
      c.route = std::move(stops);
      if (!c.route.empty()) {
        if (c.c.state == CourierState::relocating) end_relocation(c, t);
        c.c.state = CourierState::en_route;
      } else if (had_route) {
        if (c.leg_minutes > 0.0) {
          log(t, EventType::reroute, -1, c.c.id, -1, zone_of(c.c.current_point), pay(c.leg_minutes));
          c.leg_minutes = 0.0;
        }
        c.c.state = CourierState::idle;
      }
    }
  }

  void relocate(double t, int epoch) {
    RelocationEpoch rec;
    rec.t = t;
    relocation::ForecastInput in;
    in.zone_count = area_.zone_count();
    in.courier_arrival_rates = courier_rates_;
    in.request_arrival_rates = request_rates_;
    in.rounding = cfg_.rounding;
    const double horizon = t + cfg_.step;
    for (const SimCourier& s : couriers_) {
      switch (s.c.state) {
        case CourierState::idle: in.idle_couriers.push_back(zone_of(s.c.current_point)); break;
        case CourierState::relocating: in.finishing_couriers.push_back(zone_of(*s.target)); break;
        case CourierState::en_route: {
          Point at = s.c.current_point;
          double when = t;
          for (const Stop& st : s.route) {
            const Request& r = requests_[static_cast<std::size_t>(st.request)].r;
            const Point& next = st.kind == StopKind::pickup ? r.pickup : r.delivery;
            when += travel_minutes(at, next, s.c.speed);
            at = next;
          }
          if (when <= horizon + kTolerance) in.finishing_couriers.push_back(zone_of(at));
          break;
        }
        case CourierState::exited: break;
      }
    }
    std::vector<int> pool_index;
    std::vector<Request> pool;
    for (std::size_t i = 0; i < requests_.size(); ++i) {
      if (requests_[i].r.status == RequestStatus::pending) {
        in.waiting_requests.push_back(requests_[i].zone);
        pool_index.push_back(static_cast<int>(i));
        pool.push_back(requests_[i].r);
      }
    }

    rec.pending = static_cast<int>(pool.size());
    const auto fc = relocation::forecast(in);
    const auto targets = relocation::compute_targets(fc);
    const auto plan = relocation::solve_flow(fc, targets, zone_costs_);
    rec.skipped = plan.skipped;
    rec.reason = plan.reason;
    rec.flow_total = plan.skipped ? 0 : plan.total();
    for (std::size_t r = 0; r < plan.zones && !plan.skipped; ++r) {
      for (std::size_t s = 0; s < plan.zones; ++s) {
        if (plan.at(r, s) > 0) {
          report_.flows.push_back({t, static_cast<int>(r), static_cast<int>(s), plan.at(r, s)});
        }
      }
    }
    if (plan.skipped || rec.flow_total == 0 || pool.empty()) {
      report_.relocation.push_back(rec);
      return;
    }

    std::vector<std::vector<relocation::RelocatableCourier>> idle(plan.zones);
    for (std::size_t k = 0; k < couriers_.size(); ++k) {
      const SimCourier& s = couriers_[k];
      if (s.c.state != CourierState::idle) continue;
      idle[static_cast<std::size_t>(zone_of(s.c.current_point))].push_back(
          {static_cast<int>(k), s.c.current_point, s.c.available_until - t});
    }
    const auto picked = relocation::pick_relocatable(plan, idle);
    rec.relocatable = static_cast<int>(picked.size());
    const auto clusters =
        relocation::ah_cluster(picked, cfg_.cluster_threshold, cfg_.courier_speed);
    rec.clusters = static_cast<int>(clusters.size());

    relocation::JobRules rules;
    rules.now = t;
    rules.step = cfg_.step;
    rules.pickup_threshold = cfg_.params.pickup_threshold;
    rules.speed = cfg_.courier_speed;
    rules.capacity = cfg_.courier_capacity;
    rules.params = cfg_.params;
    rules.max_extensions = cfg_.max_extensions;
    Rng rng(derive_seed(seed_, {kRelocationStream, static_cast<std::uint64_t>(epoch)}));

    std::vector<std::vector<relocation::FeasibleJob>> jobs(clusters.size());
    relocation::MkpInstance mkp;
    std::vector<std::pair<std::size_t, std::size_t>> owner;  // (cluster, job within cluster)
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      mkp.capacity.push_back(clusters[k].size());
      jobs[k] = relocation::form_jobs(clusters[k], pool, rules, rng);
    }
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      for (std::size_t j = 0; j < jobs[k].size(); ++j) {
        relocation::MkpJob item;
        item.requests = jobs[k][j].requests;
        item.cost.assign(clusters.size(), std::nullopt);
        item.cost[k] = pay(jobs[k][j].duration);
        mkp.jobs.push_back(std::move(item));
        owner.emplace_back(k, j);
      }
    }
    for (const Request& r : pool) {
      mkp.request_value.push_back(backup_trip_minutes(area_.depot(), r, cfg_.params.backup_speed) /
                                  60.0 * cfg_.params.backup_rate);
    }
    rec.jobs = static_cast<int>(mkp.jobs.size());
    const auto assignment = relocation::solve_virtual(mkp, cfg_.relocation_objective);
    rec.objective = assignment.objective;

    std::vector<std::vector<int>> chosen(clusters.size());
    for (std::size_t j = 0; j < assignment.cluster_of_job.size(); ++j) {
      if (assignment.cluster_of_job[j] >= 0) chosen[owner[j].first].push_back(static_cast<int>(owner[j].second));
    }
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      if (chosen[k].empty()) continue;
      for (const auto& order :
           relocation::emit_orders(picked, clusters[k], jobs[k], chosen[k], pool, rng)) {
        SimCourier& s = couriers_[static_cast<std::size_t>(order.courier_id)];
        if (distance(s.c.current_point, order.target) < 1e-9) continue;
        s.c.state = CourierState::relocating;
        s.target = order.target;
        s.relocation_minutes = 0.0;
        ++rec.orders;
        ++report_.relocation_orders;
        log(t, EventType::relocation_order, -1, s.c.id, zone_of(s.c.current_point), zone_of(order.target),
            0.0);
      }
    }
    report_.relocation.push_back(rec);
  }

  void record_availability(double t) {
    std::vector<int> waiting(static_cast<std::size_t>(area_.zone_count()), 0);
    std::vector<int> available(waiting.size(), 0);
    for (const SimRequest& q : requests_) {
      if (q.r.status == RequestStatus::pending) ++waiting[static_cast<std::size_t>(q.zone)];
    }
    for (const SimCourier& s : couriers_) {
      if (s.c.state == CourierState::idle || s.c.state == CourierState::relocating) {
        ++available[static_cast<std::size_t>(zone_of(s.c.current_point))];
      }
    }
    double sum = 0.0;
    int zones = 0;
    for (std::size_t z = 0; z < waiting.size(); ++z) {
      if (waiting[z] == 0) continue;
      sum += static_cast<double>(available[z]) / waiting[z];
      ++zones;
    }
    if (zones > 0) report_.availability.push_back({t, sum / zones});
  }

  void finish() {
    SeedReport& r = report_;
    r.requests = static_cast<int>(requests_.size());
    r.couriers = static_cast<int>(couriers_.size());
    r.zones.assign(static_cast<std::size_t>(area_.zone_count()), {});
    for (const SimRequest& q : requests_) {
      ZoneStat& z = r.zones[static_cast<std::size_t>(q.zone)];
      ++z.requests;
      if (q.terminations == 0) ++r.unterminated;
      if (q.terminations > 1) ++r.multiply_terminated;
      if (q.terminations >= 1 && q.done_at > q.r.deadline() + 1e-6) ++r.late_deliveries;
      if (q.by_courier) {
        ++r.delivered_by_courier;
        ++z.courier_fulfilled;
      } else if (q.r.status == RequestStatus::expired_to_backup) {
        ++r.expired_to_backup;
        ++r.delivered_by_backup;
      } else if (q.r.status == RequestStatus::backup) {
        ++r.delivered_by_backup;
      }
    }
    for (const SimCourier& s : couriers_) {
      r.courier_pay += pay(s.route_odometer);
      r.relocation_pay += pay(s.relocation_odometer);
    }
    r.tsc = r.courier_pay + r.relocation_pay + r.backup_cost;
    r.fulfilled_fraction = r.requests > 0 ? static_cast<double>(r.delivered_by_courier) / r.requests : 0.0;
    double logged = 0.0;
    for (const Event& e : r.events) logged += e.cost;
    r.identity_gap = std::abs(r.tsc - logged);
  }

  const ScenarioConfig& cfg_;
  ServiceArea area_;
  std::uint64_t seed_;
  RunOptions options_;
  Rng arrival_rng_;
  relocation::ZoneCosts zone_costs_;
  std::vector<double> courier_rates_;
  std::vector<double> request_rates_;
  std::vector<SimRequest> requests_;
  std::vector<SimCourier> couriers_;
  SeedReport report_;
};

}  // namespace

double recommend_timestep(double lambda_max, double epsilon) {
  if (!(lambda_max > 0)) throw std::invalid_argument("arrival rate must be positive");
  if (!(epsilon >= 0 && epsilon <= 1)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  return std::sqrt(1.0 - epsilon) / lambda_max;
}

Arrivals generate_arrivals(const ScenarioConfig& config, const ServiceArea& area, double t, Rng& rng) {
  Arrivals out;
  const std::vector<double> request_rates = zone_request_rates(config, area);
  const std::vector<double> courier_rates = zone_courier_rates(config, area);
  for (ZoneId z = 0; z < area.zone_count(); ++z) {
    const int n = draw_count(request_rates[z], config.arrival_law, rng);
    for (int i = 0; i < n; ++i) {
      Request r;
      r.pickup = uniform_in_zone(area, z, rng);
      do {
        r.delivery = uniform_in_area(area, rng);
      } while (r.delivery == r.pickup);
      r.release = t + config.step * uniform01(rng);
      r.guarantee = config.guarantee;
      r.weight = draw_weight(config, rng);
      out.requests.push_back(r);
    }
  }
  for (ZoneId z = 0; z < area.zone_count(); ++z) {
    const int n = draw_count(courier_rates[z], config.arrival_law, rng);
    for (int i = 0; i < n; ++i) {
      Courier c;
      c.entry_point = uniform_in_zone(area, z, rng);
      c.current_point = c.entry_point;
      c.entry_time = t + config.step * uniform01(rng);
      c.available_until = c.entry_time + config.courier_budget;
      c.speed = config.courier_speed;
      c.capacity = config.courier_capacity;
      out.couriers.push_back(c);
    }
  }
  std::stable_sort(out.requests.begin(), out.requests.end(),
                   [](const Request& a, const Request& b) { return a.release < b.release; });
  std::stable_sort(out.couriers.begin(), out.couriers.end(),
                   [](const Courier& a, const Courier& b) { return a.entry_time < b.entry_time; });
  return out;
}

std::string_view to_string(EventType type) {
  switch (type) {
    case EventType::request_arrival: return "request_arrival";
    case EventType::courier_arrival: return "courier_arrival";
    case EventType::assignment: return "assignment";
    case EventType::pickup: return "pickup";
    case EventType::delivery: return "delivery";
    case EventType::backup_dispatch: return "backup_dispatch";
    case EventType::relocation_order: return "relocation_order";
    case EventType::relocation_end: return "relocation_end";
    case EventType::courier_exit: return "courier_exit";
    case EventType::reroute: return "reroute";
  }
  return "unknown";
}

SeedReport run_seed(const ScenarioConfig& config, std::uint64_t seed, const RunOptions& options) {
  config.validate();
  return Engine(config, seed, options).run();
}

RunReport run_day(const ScenarioConfig& config, const RunOptions& options) {
  config.validate();
  RunReport report;
  report.config = config;
  for (int i = 0; i < config.seeds; ++i) {
    report.seeds.push_back(run_seed(config, config.seed_base + static_cast<std::uint64_t>(i), options));
  }
  return report;
}

}  // namespace crowdship::sim
