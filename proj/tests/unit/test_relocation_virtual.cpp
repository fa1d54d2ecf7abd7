#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "core/relocation_virtual.hpp"
#include "oracles/brute_force.hpp"

using namespace crowdship;
using namespace crowdship::relocation;

namespace {

RelocatableCourier rc(int id, Point at, double budget) { return {id, at, budget}; }

Request req(int id, Point pickup, Point delivery, double release, double weight = 3.0) {
  Request r;
  r.id = id;
  r.pickup = pickup;
  r.delivery = delivery;
  r.release = release;
  r.weight = weight;
  return r;
}

FlowPlan plan_with(std::size_t zones, std::vector<std::tuple<int, int, int>> moves) {
  FlowPlan p;
  p.zones = zones;
  p.moves.assign(zones * zones, 0);
  p.skipped = false;
  for (auto [r, s, k] : moves) p.moves[r * zones + s] = k;
  return p;
}

}  // namespace

TEST_CASE("relocatable couriers are those with the most time left") {
  const FlowPlan flow = plan_with(2, {{0, 1, 2}});
  const std::vector<std::vector<RelocatableCourier>> idle = {
      {rc(4, {0, 0}, 30), rc(2, {0, 0}, 50), rc(1, {0, 0}, 30), rc(9, {0, 0}, 10)}, {rc(7, {1, 1}, 99)}};
  const auto picked = pick_relocatable(flow, idle);
  REQUIRE(picked.size() == 2);
  CHECK(picked[0].id == 2);
  CHECK(picked[1].id == 1);

  FlowPlan skipped = flow;
  skipped.skipped = true;
  CHECK(pick_relocatable(skipped, idle).empty());
  CHECK_THROWS_AS(pick_relocatable(flow, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(pick_relocatable(plan_with(2, {{1, 0, 2}}), idle), std::logic_error);
}

TEST_CASE("dissimilarity mixes distance and budget") {
  // 1 mile apart; 30 minutes of budget difference at 10 mph is 5 miles.
  CHECK(courier_dissimilarity(rc(0, {0, 0}, 60), rc(1, {1, 0}, 90), 10.0) == doctest::Approx(6.0));
}

TEST_CASE("average-linkage clustering stops at the threshold") {
  const std::vector<RelocatableCourier> cs = {rc(0, {0, 0}, 60), rc(1, {1, 0}, 60),
                                              rc(2, {2.1, 0}, 60)};
  const auto clusters = ah_cluster(cs, 1.05, 10.0);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].members == std::vector<int>{0, 1});
  CHECK(clusters[0].centroid.x == doctest::Approx(0.5));
  CHECK(clusters[0].budget == doctest::Approx(60.0));
  CHECK(clusters[1].members == std::vector<int>{2});

  CHECK(ah_cluster(cs, 100.0, 10.0).size() == 1);
  CHECK(ah_cluster(cs, 0.5, 10.0).size() == 3);
  CHECK(ah_cluster({}, 1.0, 10.0).empty());

  // Budget difference alone keeps co-located couriers apart.
  const std::vector<RelocatableCourier> apart = {rc(0, {0, 0}, 10), rc(1, {0, 0}, 100)};
  CHECK(ah_cluster(apart, 0.95, 10.0).size() == 2);
}

TEST_CASE("clusters partition the couriers") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coord(0.0, 6.0);
  std::uniform_real_distribution<double> budget(10.0, 120.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RelocatableCourier> cs;
    for (int i = 0; i < 15; ++i) cs.push_back(rc(i, {coord(rng), coord(rng)}, budget(rng)));
    std::multiset<int> seen;
    for (const Cluster& c : ah_cluster(cs, 0.95, 10.0)) seen.insert(c.members.begin(), c.members.end());
    std::multiset<int> all;
    for (int i = 0; i < 15; ++i) all.insert(i);
    CHECK(seen == all);
  }
}

TEST_CASE("jobs are valid and respect the first-pickup gate") {
  JobRules rules;
  rules.now = 100.0;
  CHECK(first_pickup_limit(rules) == doctest::Approx(10.0 + 1.67 * 6.0));

  Cluster cluster;
  cluster.members = {0};
  cluster.centroid = {1, 1};
  cluster.budget = 90.0;

  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> coord(0.0, 4.0);
  std::vector<Request> pool;
  for (int i = 0; i < 10; ++i) pool.push_back(req(i, {coord(gen), coord(gen)}, {coord(gen), coord(gen)}, 90.0));
  // Far beyond the first-pickup gate.
  pool.push_back(req(10, {5.9, 5.9}, {5.8, 5.8}, 90.0));

  Rng rng(3);
  const auto jobs = form_jobs(cluster, pool, rules, rng);
  REQUIRE_FALSE(jobs.empty());
  std::set<std::vector<int>> distinct;
  bool multi = false;
  for (const FeasibleJob& j : jobs) {
    CHECK(job_valid(j, cluster, pool, rules));
    CHECK_FALSE(std::binary_search(j.requests.begin(), j.requests.end(), 10));
    distinct.insert(j.requests);
    multi = multi || j.requests.size() > 1;
  }
  CHECK(distinct.size() == jobs.size());
  CHECK(multi);

  Rng again(3);
  const auto repeat = form_jobs(cluster, pool, rules, again);
  REQUIRE(repeat.size() == jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) CHECK(repeat[i].requests == jobs[i].requests);

  FeasibleJob broken = jobs.front();
  broken.duration += 1.0;
  CHECK_FALSE(job_valid(broken, cluster, pool, rules));
}

TEST_CASE("knapsack assignment") {
  MkpInstance in;
  in.capacity = {1};
  in.request_value = {10.0, 10.0};
  in.jobs = {{{0, 1}, {1.0}}, {{0}, {0.5}}, {{1}, {0.5}}};
  const auto count = solve_virtual(in, Objective::count);
  CHECK(count.objective == doctest::Approx(2.0));
  CHECK(count.cluster_of_job == std::vector<int>{0, -1, -1});
  const auto benefit = solve_virtual(in, Objective::benefit);
  CHECK(benefit.objective == doctest::Approx(19.0));
  CHECK(benefit.optimal);

  in.capacity = {2};
  const auto two = solve_virtual(in, Objective::benefit);
  CHECK(two.objective == doctest::Approx(19.0));

  // A job not allowed on the only cluster is never used.
  in.jobs[0].cost[0].reset();
  in.capacity = {1};
  const auto limited = solve_virtual(in, Objective::count);
  CHECK(limited.cluster_of_job[0] == -1);
  CHECK(limited.objective == doctest::Approx(1.0));

  MkpInstance empty;
  CHECK(solve_virtual(empty, Objective::count).cluster_of_job.empty());
}

TEST_CASE("knapsack agrees with enumeration") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> clusters(1, 3);
  std::uniform_int_distribution<int> jobs(1, 8);
  std::uniform_int_distribution<int> cap(0, 3);
  std::uniform_real_distribution<double> value(5.0, 30.0);
  std::uniform_real_distribution<double> cost(0.5, 20.0);
  for (int trial = 0; trial < 150; ++trial) {
    MkpInstance in;
    const int k = clusters(rng);
    for (int c = 0; c < k; ++c) in.capacity.push_back(cap(rng));
    const int requests = 6;
    for (int i = 0; i < requests; ++i) in.request_value.push_back(value(rng));
    const int nj = jobs(rng);
    for (int j = 0; j < nj; ++j) {
      MkpJob job;
      std::set<int> rs;
      const int size = 1 + static_cast<int>(rng() % 3);
      while (static_cast<int>(rs.size()) < size) rs.insert(static_cast<int>(rng() % requests));
      job.requests.assign(rs.begin(), rs.end());
      for (int c = 0; c < k; ++c) {
        if (rng() % 4 == 0) job.cost.emplace_back();
        else job.cost.emplace_back(cost(rng));
      }
      in.jobs.push_back(job);
    }
    for (Objective o : {Objective::count, Objective::benefit}) {
      const auto got = solve_virtual(in, o);
      const auto best = oracle::mkp_exhaustive(in, o);
      CHECK(got.objective == doctest::Approx(best.objective).epsilon(1e-9));
      CHECK(got.objective == doctest::Approx(assignment_objective(in, got.cluster_of_job, o)));
    }
  }
}

TEST_CASE("orders go to the members with the most time, one job each") {
  const std::vector<RelocatableCourier> cs = {rc(10, {0, 0}, 40), rc(11, {0, 0}, 80), rc(12, {0, 0}, 60)};
  Cluster cluster;
  cluster.members = {0, 1, 2};
  const std::vector<Request> pool = {req(0, {1, 0}, {1, 1}, 0), req(1, {2, 0}, {2, 1}, 0)};
  const std::vector<FeasibleJob> jobs = {
      {{0}, {{0, StopKind::pickup}, {0, StopKind::delivery}}, 12.0},
      {{1}, {{1, StopKind::pickup}, {1, StopKind::delivery}}, 18.0}};
  const std::vector<int> assigned = {0, 1};
  Rng rng(1);
  const auto orders = emit_orders(cs, cluster, jobs, assigned, pool, rng);
  REQUIRE(orders.size() == 2);
  CHECK(orders[0].courier_id == 11);
  CHECK(orders[1].courier_id == 12);
  CHECK(orders[0].job != orders[1].job);
  for (const RelocationOrder& o : orders) {
    CHECK(o.target == pool[static_cast<std::size_t>(o.job)].pickup);
  }
}
