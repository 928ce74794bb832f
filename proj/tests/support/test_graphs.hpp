#pragma once

// Random graph generators and a reference Dijkstra shared by the unit and
// acceptance tests.

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "lexplan/search.hpp"
#include "lexplan/sim.hpp"

namespace lexplan::testing {

struct RandomGraph {
  std::size_t node_count = 0;
  std::size_t levels = 0;
  std::vector<WeightedEdge> edges;
  NodeId init = 0;
  NodeId goal = 0;

  CostGraph graph() const { return CostGraph(node_count, levels, edges); }
};

/// Costs are multiples of 1/4, so every sum is exact in binary floating
/// point. Upper levels are drawn from {0, ..., 3}/4 and the last level from
/// {1, ..., 8}/4, keeping it strictly positive.
inline RandomGraph random_dyadic_graph(std::uint64_t seed, std::size_t max_nodes, double edge_probability,
                                       std::size_t fixed_levels = 0) {
  SplitMix64 rng(seed);
  RandomGraph g;
  g.node_count = 2 + rng.next() % (max_nodes - 1);
  g.levels = fixed_levels ? fixed_levels : 1 + rng.next() % 3;
  for (NodeId a = 0; a < g.node_count; ++a) {
    for (NodeId b = 0; b < g.node_count; ++b) {
      if (a == b || rng.uniform() >= edge_probability) continue;
      CostVector c = CostVector::zeros(g.levels);
      for (std::size_t k = 0; k + 1 < g.levels; ++k) c.set(k, static_cast<double>(rng.next() % 4) / 4.0);
      c.set(g.levels - 1, static_cast<double>(1 + rng.next() % 8) / 4.0);
      g.edges.push_back({a, b, c});
    }
  }
  g.init = static_cast<NodeId>(rng.next() % g.node_count);
  g.goal = static_cast<NodeId>(rng.next() % g.node_count);
  return g;
}

/// Textbook single-objective Dijkstra on one cost level.
inline std::vector<double> dijkstra(const CostGraph& graph, NodeId init, std::size_t level) {
  std::vector<double> dist(graph.node_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[init] = 0.0;
  queue.push({0.0, init});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    for (const auto& arc : graph.out_edges(v)) {
      const double nd = d + arc.cost[level];
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        queue.push({nd, arc.to});
      }
    }
  }
  return dist;
}

}  // namespace lexplan::testing
