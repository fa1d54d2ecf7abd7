#include "oracles/property_suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "core/construction.hpp"
#include "core/mtamp.hpp"
#include "core/relocation_flow.hpp"
#include "core/relocation_virtual.hpp"
#include "core/rng.hpp"
#include "oracles/brute_force.hpp"
#include "oracles/simplex.hpp"

namespace crowdship::oracle {

namespace {

using relocation::RelocationTargets;
using relocation::ZoneCosts;
using relocation::ZoneForecast;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void fail(SuiteResult& r, const std::string& message) {
  if (r.failures++ == 0) r.first_failure = message;
}

ZoneForecast random_forecast(Rng& rng, int zones, int idle_max, int other_max) {
  ZoneForecast f;
  for (int r = 0; r < zones; ++r) {
    f.idle.push_back(uniform_int(rng, 0, idle_max));
    f.finishing.push_back(uniform_int(rng, 0, other_max));
    f.arriving.push_back(uniform_int(rng, 0, other_max));
    f.waiting.push_back(uniform_int(rng, 0, other_max));
    f.expected.push_back(uniform_int(rng, 0, other_max));
  }
  return f;
}

ZoneCosts geometric_costs(Rng& rng, int zones) {
  std::vector<Point> at;
  for (int r = 0; r < zones; ++r) at.push_back({6.0 * uniform01(rng), 6.0 * uniform01(rng)});
  ZoneCosts c(static_cast<std::size_t>(zones));
  for (int r = 0; r < zones; ++r) {
    for (int s = 0; s < zones; ++s) {
      if (r != s) c(r, s) = distance(at[r], at[s]) / 10.0 * 7.0;
    }
  }
  return c;
}

ZoneCosts integer_costs(Rng& rng, int zones) {
  ZoneCosts c(static_cast<std::size_t>(zones));
  for (int r = 0; r < zones; ++r) {
    for (int s = 0; s < zones; ++s) {
      if (r != s) c(r, s) = uniform_int(rng, 1, 20);
    }
  }
  return c;
}

std::string describe(const ZoneForecast& f) {
  std::ostringstream out;
  auto row = [&](const char* name, const std::vector<int>& v) {
    out << ' ' << name << '=';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  };
  row("idle", f.idle);
  row("finishing", f.finishing);
  row("arriving", f.arriving);
  row("waiting", f.waiting);
  row("expected", f.expected);
  return out.str();
}

}  // namespace

SuiteResult check_relocation_remarks(int cases, std::uint64_t seed) {
  SuiteResult out;
  out.name = "relocation remarks";
  const Timer timer;
  Rng rng(derive_seed(seed, {0x1e1}));
  for (int attempt = 0; out.cases < cases && attempt < 50 * cases; ++attempt) {
    const int zones = uniform_int(rng, 1, 10);
    const ZoneForecast f = random_forecast(rng, zones, 10, 10);
    const RelocationTargets t = relocation::compute_targets(f);
    const auto plan = relocation::solve_flow(f, t, geometric_costs(rng, zones));
    if (!t.triggered() || plan.skipped) continue;
    ++out.cases;
    const auto n = static_cast<std::size_t>(zones);
    const long total_n = t.total_courier_excess;
    const long total_d = t.total_request_excess;
    long expected_moves = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const long net = f.supply(r) - f.demand(r);
      const long n_exc = std::max(net, 0L);
      const long d_exc = std::max(-net, 0L);
      expected_moves += d_exc * total_n / total_d;
      const long after = net + plan.inflow(r) - plan.outflow(r);
      std::string problem;
      if (plan.outflow(r) > f.idle[r]) problem = "outflow exceeds idle couriers";
      else if (after < t.target[r]) problem = "zone falls short of its target";
      else if (n_exc > 0 && t.target[r] != 0) problem = "surplus zone has non-zero target";
      else if (n_exc > 0 && plan.inflow(r) != 0) problem = "surplus zone receives couriers";
      else if (d_exc > 0 && plan.outflow(r) != 0) problem = "deficit zone sends couriers";
      else if (d_exc > 0 && total_n < total_d && after > 0) problem = "deficit zone ends with excess";
      if (!problem.empty()) {
        fail(out, problem + " (zone " + std::to_string(r) + ";" + describe(f) + ")");
        break;
      }
    }
    if (plan.total() != expected_moves) fail(out, "relocated total differs from the proportional total;" + describe(f));
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult check_lp_integrality(int cases, std::uint64_t seed) {
  SuiteResult out;
  out.name = "lp integrality";
  const Timer timer;
  Rng rng(derive_seed(seed, {0x7a1}));
  for (int i = 0; i < cases; ++i) {
    const int zones = uniform_int(rng, 1, 6);
    ZoneForecast f = random_forecast(rng, zones, 3, 6);
    const RelocationTargets t = relocation::compute_targets(f);
    const ZoneCosts c = integer_costs(rng, zones);
    ++out.cases;

    const auto lp = relocation_lp(f, t, c);
    const auto relaxed = solve_lp(lp.a, lp.b, lp.c);
    const auto exact = relocation_ilp(f, t, c);
    if ((relaxed.status == LpStatus::optimal) != exact.feasible) {
      fail(out, "LP and integer program disagree on feasibility;" + describe(f));
      continue;
    }
    if (relaxed.status == LpStatus::unbounded) {
      fail(out, "LP reported unbounded;" + describe(f));
      continue;
    }
    if (!exact.feasible) continue;
    double worst = 0.0;
    double rounded = 0.0;
    for (std::size_t k = 0; k < relaxed.x.size(); ++k) {
      const double nearest = std::round(relaxed.x[k]);
      worst = std::max(worst, std::abs(relaxed.x[k] - nearest));
      rounded += nearest * lp.c[k];
    }
    if (worst >= 1e-9) {
      fail(out, "fractional LP optimum (" + std::to_string(worst) + ");" + describe(f));
      continue;
    }
    if (rounded != exact.objective) {
      fail(out, "LP objective " + std::to_string(rounded) + " differs from enumeration " +
                    std::to_string(exact.objective) + ";" + describe(f));
      continue;
    }
    if (t.triggered()) {
      const auto plan = relocation::solve_flow(f, t, c);
      if (plan.skipped) {
        fail(out, "flow solver skipped a feasible program;" + describe(f));
      } else if (plan.cost != exact.objective) {
        fail(out, "flow cost " + std::to_string(plan.cost) + " differs from enumeration " +
                      std::to_string(exact.objective) + ";" + describe(f));
      }
    }
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult check_knapsack(int cases, std::uint64_t seed) {
  SuiteResult out;
  out.name = "knapsack";
  const Timer timer;
  Rng rng(derive_seed(seed, {0x3b1}));
  for (int i = 0; i < cases; ++i) {
    relocation::MkpInstance in;
    const int clusters = uniform_int(rng, 1, 4);
    const int pool = uniform_int(rng, 3, 10);
    const int jobs = uniform_int(rng, 1, 12);
    for (int k = 0; k < clusters; ++k) in.capacity.push_back(uniform_int(rng, 1, 3));
    for (int r = 0; r < pool; ++r) in.request_value.push_back(5.0 + 35.0 * uniform01(rng));
    for (int j = 0; j < jobs; ++j) {
      relocation::MkpJob job;
      std::vector<int> ids(static_cast<std::size_t>(pool));
      for (int r = 0; r < pool; ++r) ids[static_cast<std::size_t>(r)] = r;
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(static_cast<std::size_t>(uniform_int(rng, 1, std::min(3, pool))));
      std::sort(ids.begin(), ids.end());
      job.requests = ids;
      job.cost.assign(static_cast<std::size_t>(clusters), std::nullopt);
      const int home = uniform_int(rng, 0, clusters - 1);
      for (int k = 0; k < clusters; ++k) {
        if (k == home || uniform01(rng) < 0.3) job.cost[static_cast<std::size_t>(k)] = 60.0 * uniform01(rng);
      }
      in.jobs.push_back(std::move(job));
    }
    for (auto objective : {relocation::Objective::count, relocation::Objective::benefit}) {
      ++out.cases;
      const auto got = relocation::solve_virtual(in, objective);
      const auto want = mkp_exhaustive(in, objective);
      std::vector<int> load(in.capacity.size(), 0);
      std::vector<int> used(in.request_value.size(), 0);
      bool valid = got.optimal && got.cluster_of_job.size() == in.jobs.size();
      for (std::size_t j = 0; valid && j < got.cluster_of_job.size(); ++j) {
        const int k = got.cluster_of_job[j];
        if (k < 0) continue;
        valid = k < clusters && in.jobs[j].cost[static_cast<std::size_t>(k)].has_value() &&
                ++load[static_cast<std::size_t>(k)] <= in.capacity[static_cast<std::size_t>(k)];
        for (int r : in.jobs[j].requests) valid = valid && ++used[static_cast<std::size_t>(r)] == 1;
      }
      const char* name = objective == relocation::Objective::count ? "count" : "benefit";
      if (!valid) {
        fail(out, std::string("invalid assignment under ") + name + " objective, case " + std::to_string(i));
      } else if (std::abs(got.objective - want.objective) > 1e-9 * std::max(1.0, std::abs(want.objective))) {
        fail(out, std::string(name) + " objective " + std::to_string(got.objective) +
                      " differs from enumeration " + std::to_string(want.objective) + ", case " +
                      std::to_string(i));
      }
    }
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult check_schedule(int cases, std::uint64_t seed) {
  SuiteResult out;
  out.name = "memory schedule";
  const Timer timer;
  Rng rng(derive_seed(seed, {0x5c4}));
  for (int i = 0; i < cases; ++i) {
    ++out.cases;
    const int delta = uniform_int(rng, 1, 400);
    const int eta = uniform_int(rng, 2, 30);
    const auto s = mtamp::plan_schedule(delta, eta);
    const std::string where = " (delta " + std::to_string(delta) + ", eta " + std::to_string(eta) + ")";
    const int phases = static_cast<int>(std::ceil(static_cast<double>(delta) / eta));
    if (s.phases != phases || static_cast<int>(s.sizes.size()) != phases) {
      fail(out, "wrong phase count" + where);
      continue;
    }
    bool increasing = true;
    for (std::size_t q = 1; q < s.sizes.size(); ++q) increasing = increasing && s.sizes[q] > s.sizes[q - 1];
    if (!increasing) fail(out, "memory sizes not strictly increasing" + where);
    else if (s.sizes.back() != delta) fail(out, "last memory size differs from delta" + where);
    else if (s.first_step != std::max(1, s.sizes.front() - 1)) fail(out, "wrong first step" + where);

    const int memory = uniform_int(rng, 1, 200);
    const auto steps = mtamp::step_sizes(memory, s.first_step);
    long sum = 0;
    bool positive = true;
    for (int d : steps) {
      sum += d;
      positive = positive && d >= 1;
    }
    const int d1 = std::clamp(s.first_step, 1, memory);
    if (sum != memory || !positive || steps.empty() || steps.front() != d1 ||
        static_cast<int>(steps.size()) != (memory + d1 - 1) / d1) {
      fail(out, "step sizes do not partition memory of size " + std::to_string(memory) + where);
    }
  }
  out.seconds = timer.seconds();
  return out;
}

namespace {

EpochInstance micro_instance(Rng& rng) {
  EpochInstance in;
  in.now = 100.0;
  const int requests = uniform_int(rng, 1, 5);
  const int couriers = uniform_int(rng, 1, 3);
  auto point = [&] { return Point{1.1 * uniform01(rng), 1.1 * uniform01(rng)}; };
  for (int i = 0; i < requests; ++i) {
    Request r;
    r.id = i;
    r.pickup = point();
    r.delivery = point();
    r.release = in.now - 10.0 * uniform01(rng);
    r.guarantee = 20.0 + 40.0 * uniform01(rng);
    r.weight = 2.0 + 5.0 * uniform01(rng);
    in.requests.push_back(r);
    in.movable.push_back(1);
  }
  for (int k = 0; k < couriers; ++k) {
    Courier c;
    c.id = k;
    c.entry_point = c.current_point = point();
    c.entry_time = in.now - 5.0;
    c.available_until = in.now + 20.0 + 70.0 * uniform01(rng);
    in.couriers.push_back({c, 0.0});
  }
  return in;
}

}  // namespace

MicroResult run_micro_optimality(int cases, std::uint64_t seed) {
  MicroResult out;
  const Timer timer;
  Rng rng(derive_seed(seed, {0x3c7}));
  for (int i = 0; i < cases; ++i) {
    const EpochInstance in = micro_instance(rng);
    std::vector<int> pending;
    for (std::size_t r = 0; r < in.requests.size(); ++r) pending.push_back(static_cast<int>(r));
    const std::vector<std::vector<Stop>> committed(in.couriers.size());
    const Solution base = construction::base_solution(in, committed, pending);
    std::vector<Solution> initials;
    for (auto method : construction::kInitialMethods) {
      initials.push_back(construction::build_initial(method, in, base));
    }
    const auto result = mtamp::run_mtamp(in, initials, {derive_seed(seed, {0x3c8, static_cast<std::uint64_t>(i)})});
    const Solution& got = result.best;
    ++out.cases;

    bool feasible = true;
    for (const auto& route : got.routes) feasible = feasible && route->feasible();
    if (!feasible) {
      ++out.infeasible;
      continue;
    }
    const Solution* best_initial = nullptr;
    for (const Solution& s : initials) {
      if (!s.cost.feasible()) continue;
      if (!best_initial || preferable(s, *best_initial)) best_initial = &s;
    }
    if (best_initial && preferable(*best_initial, got)) ++out.worse_than_initial;

    const PdpOptimum opt = pdp_exhaustive(in);
    const int left = static_cast<int>(got.unassigned.size());
    if (left < opt.unassigned || (left == opt.unassigned && got.cost.total < opt.cost - 1e-6)) {
      ++out.beats_oracle;
    } else if (left == opt.unassigned && got.cost.total <= 1.05 * opt.cost + 1e-9) {
      ++out.near_optimal;
    }
  }
  out.seconds = timer.seconds();
  return out;
}

SuiteResult check_micro_optimality(int cases, std::uint64_t seed) {
  const MicroResult m = run_micro_optimality(cases, seed);
  SuiteResult out;
  out.name = "micro optimality";
  out.cases = m.cases;
  out.seconds = m.seconds;
  if (m.infeasible > 0) fail(out, std::to_string(m.infeasible) + " infeasible results");
  if (m.worse_than_initial > 0) fail(out, std::to_string(m.worse_than_initial) + " results worse than an initial solution");
  if (m.beats_oracle > 0) fail(out, std::to_string(m.beats_oracle) + " results better than the exhaustive optimum");
  if (10 * m.near_optimal < 9 * m.cases) {
    fail(out, "only " + std::to_string(m.near_optimal) + " of " + std::to_string(m.cases) + " near-optimal");
  }
  return out;
}

std::vector<SuiteResult> run_property_suites(std::uint64_t seed) {
  return {
      check_relocation_remarks(1000, seed), check_lp_integrality(500, seed), check_knapsack(300, seed),
      check_schedule(1000, seed),           check_micro_optimality(100, seed),
  };
}

}  // namespace crowdship::oracle
