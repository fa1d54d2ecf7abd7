#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "core/construction.hpp"
#include "core/mtamp.hpp"
#include "fixtures.hpp"

using namespace crowdship;
using namespace crowdship::mtamp;
using fixtures::courier;
using fixtures::instance;
using fixtures::request;

namespace {

Stop P(int r) { return {r, StopKind::pickup}; }
Stop D(int r) { return {r, StopKind::delivery}; }

EpochInstance random_instance(std::mt19937_64& rng, int requests, int couriers) {
  std::uniform_real_distribution<double> coord(0.0, 2.5);
  std::uniform_real_distribution<double> weight(2.0, 7.0);
  std::vector<Request> rs;
  for (int i = 0; i < requests; ++i) {
    rs.push_back(request(i, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}, 0.0, weight(rng)));
  }
  std::vector<CourierSnapshot> cs;
  for (int k = 0; k < couriers; ++k) cs.push_back(courier(k, {coord(rng), coord(rng)}, 120.0));
  return instance(rs, cs);
}

std::vector<Solution> initials_for(const EpochInstance& in) {
  std::vector<int> pending(in.requests.size());
  std::iota(pending.begin(), pending.end(), 0);
  const Solution base = construction::base_solution(in, {}, pending);
  std::vector<Solution> out;
  for (auto m : construction::kInitialMethods) out.push_back(construction::build_initial(m, in, base));
  return out;
}

}  // namespace

TEST_CASE("selection probabilities") {
  const std::vector<double> costs = {100.0, 110.0, 90.0};
  const auto p = selection_probabilities(costs, 100.0, 5.0);
  const double w0 = 1.0;
  const double w1 = std::exp(-0.5);
  const double w2 = std::exp(0.5);
  const double sum = w0 + w1 + w2;
  CHECK(p[0] == doctest::Approx(w0 / sum));
  CHECK(p[1] == doctest::Approx(w1 / sum));
  CHECK(p[2] == doctest::Approx(w2 / sum));

  const std::vector<double> same = {7.0, 7.0, 7.0, 7.0};
  for (double v : selection_probabilities(same, 10.0, 5.0)) CHECK(v == doctest::Approx(0.25));
  for (double v : selection_probabilities(same, 0.0, 5.0)) CHECK(v == doctest::Approx(0.25));
  CHECK(selection_probabilities({}, 1.0, 5.0).empty());
}

TEST_CASE("selection draws follow the probabilities") {
  const std::vector<double> costs = {100.0, 120.0, 80.0};
  const auto p = selection_probabilities(costs, 100.0, 5.0);
  Rng rng(9);
  std::vector<int> hits(3, 0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++hits[select_index(costs, 100.0, 5.0, rng)];
  for (int i = 0; i < 3; ++i) {
    const double sd = std::sqrt(p[i] * (1 - p[i]) / draws);
    CHECK(std::abs(hits[i] / double(draws) - p[i]) < 5 * sd);
  }
  CHECK_THROWS_AS(select_index({}, 1.0, 5.0, rng), std::invalid_argument);
}

TEST_CASE("memory schedule") {
  const PhaseSchedule s = plan_schedule(13, 6);
  CHECK(s.phases == 3);
  CHECK(s.sizes == std::vector<int>{7, 10, 13});
  CHECK(s.first_step == 6);
  CHECK(plan_schedule(0, 6).empty());
  const PhaseSchedule one = plan_schedule(1, 6);
  CHECK(one.phases == 1);
  CHECK(one.sizes == std::vector<int>{1});
  CHECK(one.first_step == 1);
  CHECK_THROWS_AS(plan_schedule(5, 1), std::invalid_argument);
}

TEST_CASE("horizontal step sizes cover the memory") {
  CHECK(step_sizes(10, 3) == std::vector<int>{3, 3, 2, 2});
  CHECK(step_sizes(0, 3).empty());
  CHECK(step_sizes(4, 9) == std::vector<int>{4});
  for (int m = 1; m < 80; ++m) {
    for (int d = 1; d < 20; ++d) {
      const auto steps = step_sizes(m, d);
      CHECK(std::accumulate(steps.begin(), steps.end(), 0) == m);
    }
  }
}

TEST_CASE("fingerprints identify stop sequences per courier") {
  auto in = instance({request(0, {1, 0}, {1, 1}), request(1, {0, 1}, {1, 1})},
                     {courier(0, {0, 0}), courier(1, {0, 0})});
  auto build = [&](std::vector<Stop> a, std::vector<Stop> b, std::vector<int> u) {
    return construction::base_solution(in, {std::move(a), std::move(b)}, std::move(u));
  };
  const Solution s1 = build({P(0), D(0)}, {P(1), D(1)}, {});
  const Solution s2 = build({P(0), D(0)}, {P(1), D(1)}, {});
  const Solution swapped = build({P(1), D(1)}, {P(0), D(0)}, {});
  const Solution fewer = build({P(0), D(0)}, {}, {1});
  CHECK(fingerprint(s1) == fingerprint(s2));
  CHECK_FALSE(fingerprint(s1) == fingerprint(swapped));
  CHECK_FALSE(fingerprint(s1) == fingerprint(fewer));

  CandidateList list;
  CHECK(list.add(make_candidate(s1)));
  CHECK_FALSE(list.add(make_candidate(s2)));
  CHECK(list.add(make_candidate(swapped)));
  CHECK(list.size() == 2);
  CHECK(list.contains(fingerprint(fewer)) == false);
}

TEST_CASE("solutions become tabu after repeated entries") {
  auto in = instance({request(0, {1, 0}, {1, 1})}, {courier(0, {0, 0})});
  const Candidate c = make_candidate(construction::base_solution(in, {{P(0), D(0)}}, {}));
  SearchMemory memory;
  memory.tabu_count = 3;
  memory.enter(c);
  memory.enter(c);
  CHECK_FALSE(memory.is_tabu(c.key));
  memory.enter(c);
  CHECK(memory.is_tabu(c.key));
  CHECK(memory.memory.size() == 3);
}

TEST_CASE("search result is feasible, deterministic and no worse than the starts") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const EpochInstance in = random_instance(rng, 14, 4);
    const auto initials = initials_for(in);
    std::vector<TraceRecord> trace;
    const SearchResult a = run_mtamp(in, initials, {static_cast<std::uint64_t>(trial), &trace});
    const SearchResult b = run_mtamp(in, initials, {static_cast<std::uint64_t>(trial), nullptr});
    CHECK(a.best.cost.feasible());
    CHECK(fingerprint(a.best) == fingerprint(b.best));
    CHECK(a.evaluations == b.evaluations);
    for (const Solution& s : initials) CHECK_FALSE(preferable(s, a.best));
    CHECK(a.start >= 0);
    CHECK(a.start < 3);
    if (a.evaluations > 0) CHECK_FALSE(trace.empty());
  }
  CHECK_THROWS_AS(run_mtamp(random_instance(rng, 2, 2), {}, {}), std::invalid_argument);
}
