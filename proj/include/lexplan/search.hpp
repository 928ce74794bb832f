#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lexplan/costs.hpp"

namespace lexplan {

using NodeId = std::uint32_t;

struct WeightedEdge {
  NodeId from = 0;
  NodeId to = 0;
  CostVector cost;
};

/// Directed graph with K-level cost vectors on its edges, stored as CSR.
/// Out-edges keep the order in which they were supplied.
class CostGraph {
 public:
  struct Arc {
    NodeId to;
    CostVector cost;
  };

  CostGraph() = default;
  CostGraph(std::size_t node_count, std::size_t levels, std::span<const WeightedEdge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return arcs_.size(); }
  std::size_t levels() const { return levels_; }
  std::span<const Arc> out_edges(NodeId v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::size_t levels_ = 0;
};

struct SearchOptions {
  double tie_epsilon = 1e-9;
  /// Stop as soon as this node is settled. Off by default so results carry
  /// full single-source semantics.
  std::optional<NodeId> stop_at;
};

struct SearchResult {
  std::vector<CostVector> cost_to_come;
  std::vector<std::optional<NodeId>> parent;
  std::vector<NodeId> settled_order;

  bool reached(NodeId v) const { return cost_to_come[v].is_finite(); }
};

/// Lexicographic Dijkstra over a flat queue: each pop narrows the unsettled
/// set level by level to the minimum, then breaks remaining ties by node id.
/// O(K |V|^2).
SearchResult lex_search_naive(const CostGraph& graph, NodeId init, const SearchOptions& options = {});

/// Same contract as lex_search_naive on a binary heap with lazy deletion.
/// O(K |V| log |V| + K |E|).
SearchResult lex_search_heap(const CostGraph& graph, NodeId init, const SearchOptions& options = {});

/// Node sequence from the search root to `goal`, or nullopt if unreached.
std::optional<std::vector<NodeId>> extract_path(const SearchResult& result, NodeId goal);

/// Sums edge costs along a node sequence.
CostVector path_cost(const CostGraph& graph, std::span<const NodeId> path);

/// Thrown when brute-force enumeration exceeds its guard.
class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BruteForceResult {
  CostVector cost;
  std::vector<NodeId> path;
};

/// Exhaustive oracle: enumerates every simple init->goal path and returns the
/// exact lexicographic minimum. Graphs above 15 nodes are refused once more
/// than one million simple paths have been visited.
std::optional<BruteForceResult> brute_force_lex(const CostGraph& graph, NodeId init, NodeId goal);

}  // namespace lexplan
