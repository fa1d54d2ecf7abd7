#include "core/min_cost_flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace crowdship {

MinCostFlow::MinCostFlow(int nodes) {
  if (nodes < 0) throw std::invalid_argument("negative node count");
  adjacency_.resize(static_cast<std::size_t>(nodes));
}

int MinCostFlow::add_arc(int from, int to, long capacity, double cost) {
  const int n = node_count();
  if (from < 0 || from >= n || to < 0 || to >= n) throw std::out_of_range("arc endpoint");
  if (capacity < 0) throw std::invalid_argument("negative arc capacity");
  const int id = static_cast<int>(arcs_.size() / 2);
  adjacency_[from].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({to, capacity, cost, 0});
  adjacency_[to].push_back(static_cast<int>(arcs_.size()));
  arcs_.push_back({from, 0, -cost, 0});
  return id;
}

MinCostFlow::Result MinCostFlow::solve(int source, int sink, long limit) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kEps = 1e-12;
  const int n = node_count();
  Result result;
  std::vector<double> dist(n);
  std::vector<int> via(n);
  std::vector<char> queued(n);

  while (result.flow < limit) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    std::fill(queued.begin(), queued.end(), 0);
    std::deque<int> queue{source};
    dist[source] = 0.0;
    queued[source] = 1;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      queued[u] = 0;
      for (int e : adjacency_[u]) {
        const Arc& a = arcs_[e];
        if (a.capacity - a.flow <= 0) continue;
        const double d = dist[u] + a.cost;
        if (d < dist[a.to] - kEps) {
          dist[a.to] = d;
          via[a.to] = e;
          if (!queued[a.to]) {
            queued[a.to] = 1;
            queue.push_back(a.to);
          }
        }
      }
    }
    if (via[sink] < 0) break;

    long push = limit - result.flow;
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      const Arc& a = arcs_[via[v]];
      push = std::min(push, a.capacity - a.flow);
    }
    for (int v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
      arcs_[via[v]].flow += push;
      arcs_[via[v] ^ 1].flow -= push;
    }
    result.flow += push;
    result.cost += static_cast<double>(push) * dist[sink];
  }
  return result;
}

}  // namespace crowdship
