#include <doctest.h>

#include "core/min_cost_flow.hpp"

using crowdship::MinCostFlow;

TEST_CASE("cheapest path is saturated first") {
  MinCostFlow g(4);
  const int a = g.add_arc(0, 1, 2, 1.0);
  const int b = g.add_arc(0, 2, 2, 3.0);
  const int c = g.add_arc(1, 3, 2, 1.0);
  const int d = g.add_arc(2, 3, 2, 1.0);
  const auto r = g.solve(0, 3, 3);
  CHECK(r.flow == 3);
  CHECK(r.cost == doctest::Approx(2 * 2.0 + 1 * 4.0));
  CHECK(g.flow(a) == 2);
  CHECK(g.flow(b) == 1);
  CHECK(g.flow(c) == 2);
  CHECK(g.flow(d) == 1);
}

TEST_CASE("flow stops at the cut") {
  MinCostFlow g(3);
  g.add_arc(0, 1, 5, 1.0);
  g.add_arc(1, 2, 2, 1.0);
  const auto r = g.solve(0, 2, 10);
  CHECK(r.flow == 2);
  CHECK(r.cost == doctest::Approx(4.0));
}

TEST_CASE("residual arcs reroute earlier flow") {
  // The greedy first path 0-1-2-3 must be partly undone to reach flow 2.
  MinCostFlow g(4);
  g.add_arc(0, 1, 1, 1.0);
  g.add_arc(0, 2, 1, 2.0);
  g.add_arc(1, 2, 1, 0.0);
  g.add_arc(1, 3, 1, 3.0);
  g.add_arc(2, 3, 1, 1.0);
  const auto r = g.solve(0, 3, 2);
  CHECK(r.flow == 2);
  CHECK(r.cost == doctest::Approx(1.0 + 3.0 + 2.0 + 1.0));
}

TEST_CASE("negative arc costs") {
  MinCostFlow g(3);
  g.add_arc(0, 1, 1, -2.0);
  g.add_arc(1, 2, 1, 1.0);
  g.add_arc(0, 2, 1, 0.5);
  const auto r = g.solve(0, 2, 2);
  CHECK(r.flow == 2);
  CHECK(r.cost == doctest::Approx(-0.5));
}

TEST_CASE("zero limit sends nothing") {
  MinCostFlow g(2);
  const int a = g.add_arc(0, 1, 4, 1.0);
  const auto r = g.solve(0, 1, 0);
  CHECK(r.flow == 0);
  CHECK(g.flow(a) == 0);
  CHECK(g.node_count() == 2);
}
