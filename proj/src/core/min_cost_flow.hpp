#pragma once

#include <vector>

namespace crowdship {

// Successive-shortest-path min-cost flow on integer capacities with real arc
// costs. Graphs here are small (a few hundred nodes), so label-correcting
// shortest paths are used; negative residual costs are handled natively.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes);

  // Returns an arc handle for flow().
  int add_arc(int from, int to, long capacity, double cost);

  struct Result {
    long flow = 0;
    double cost = 0.0;
  };
  // Sends up to `limit` units from source to sink at minimum cost.
  Result solve(int source, int sink, long limit);

  long flow(int arc) const { return arcs_[2 * arc].flow; }
  int node_count() const { return static_cast<int>(adjacency_.size()); }

 private:
  struct Arc {
    int to;
    long capacity;
    double cost;
    long flow;
  };
  std::vector<Arc> arcs_;  // arc 2i is forward, 2i+1 its residual twin
  std::vector<std::vector<int>> adjacency_;
};

}  // namespace crowdship
