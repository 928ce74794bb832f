#include "lexplan/search.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace lexplan {

CostGraph::CostGraph(std::size_t node_count, std::size_t levels, std::span<const WeightedEdge> edges)
    : offsets_(node_count + 1, 0), levels_(levels) {
  if (levels == 0 || levels > CostVector::kMaxLevels) {
    throw std::invalid_argument("cost graph needs between 1 and 8 levels");
  }
  for (const WeightedEdge& e : edges) {
    if (e.from >= node_count || e.to >= node_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.cost.size() != levels) {
      throw std::invalid_argument("edge cost has wrong number of levels");
    }
    ++offsets_[e.from + 1];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    offsets_[v + 1] += offsets_[v];
  }
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  arcs_.resize(edges.size());
  for (const WeightedEdge& e : edges) {
    arcs_[fill[e.from]++] = Arc{e.to, e.cost};
  }
}

namespace {

SearchResult init_result(const CostGraph& graph, NodeId init) {
  if (init >= graph.node_count()) {
    throw std::invalid_argument("search root " + std::to_string(init) + " is not in the graph");
  }
  SearchResult r;
  r.cost_to_come.assign(graph.node_count(), CostVector::infinite(graph.levels()));
  r.parent.assign(graph.node_count(), std::nullopt);
  r.cost_to_come[init] = CostVector::zeros(graph.levels());
  return r;
}

// Level cascade: the first non-tied level decides. An improvement at level k
// overwrites levels k..K-1 and keeps the tied levels above it.
bool cascade_update(CostVector& current, const CostVector& candidate, double eps) {
  for (std::size_t k = 0; k < current.size(); ++k) {
    if (costs_tied(candidate[k], current[k], eps)) {
      continue;
    }
    if (candidate[k] < current[k]) {
      for (std::size_t n = k; n < current.size(); ++n) {
        current.set(n, candidate[n]);
      }
      return true;
    }
    return false;
  }
  return false;
}

bool lex_less_exact(const CostVector& a, NodeId va, const CostVector& b, NodeId vb) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) {
      return a[k] < b[k];
    }
  }
  return va < vb;
}

}  // namespace

SearchResult lex_search_naive(const CostGraph& graph, NodeId init, const SearchOptions& options) {
  SearchResult r = init_result(graph, init);
  const std::size_t levels = graph.levels();
  const double eps = options.tie_epsilon;

  std::vector<NodeId> queue(graph.node_count());
  for (NodeId v = 0; v < queue.size(); ++v) {
    queue[v] = v;
  }
  std::vector<char> settled(graph.node_count(), 0);
  std::vector<std::size_t> tied;
  std::vector<std::size_t> next;
  tied.reserve(queue.size());
  next.reserve(queue.size());

  while (!queue.empty()) {
    // Level 0 over the whole queue, then narrow within the tied set.
    double best = std::numeric_limits<double>::infinity();
    for (const NodeId v : queue) {
      best = std::min(best, r.cost_to_come[v][0]);
    }
    tied.clear();
    for (std::size_t pos = 0; pos < queue.size(); ++pos) {
      if (costs_tied(r.cost_to_come[queue[pos]][0], best, eps)) {
        tied.push_back(pos);
      }
    }
    for (std::size_t k = 1; k < levels && tied.size() > 1; ++k) {
      best = std::numeric_limits<double>::infinity();
      for (const std::size_t pos : tied) {
        best = std::min(best, r.cost_to_come[queue[pos]][k]);
      }
      next.clear();
      for (const std::size_t pos : tied) {
        if (costs_tied(r.cost_to_come[queue[pos]][k], best, eps)) {
          next.push_back(pos);
        }
      }
      tied.swap(next);
    }
    const std::size_t pick = *std::min_element(
        tied.begin(), tied.end(), [&](std::size_t a, std::size_t b) { return queue[a] < queue[b]; });
    const NodeId u = queue[pick];
    if (!r.cost_to_come[u].is_finite()) {
      break;  // everything left is unreachable
    }
    queue[pick] = queue.back();
    queue.pop_back();
    settled[u] = 1;
    r.settled_order.push_back(u);
    if (options.stop_at == u) {
      break;
    }
    for (const CostGraph::Arc& arc : graph.out_edges(u)) {
      if (settled[arc.to]) {
        continue;
      }
      if (cascade_update(r.cost_to_come[arc.to], r.cost_to_come[u] + arc.cost, eps)) {
        r.parent[arc.to] = u;
      }
    }
  }
  return r;
}

SearchResult lex_search_heap(const CostGraph& graph, NodeId init, const SearchOptions& options) {
  SearchResult r = init_result(graph, init);
  const double eps = options.tie_epsilon;

  struct Entry {
    CostVector cost;
    NodeId node;
  };
  const auto after = [](const Entry& a, const Entry& b) {
    return lex_less_exact(b.cost, b.node, a.cost, a.node);
  };
  std::vector<Entry> storage;
  storage.reserve(graph.node_count());
  std::priority_queue<Entry, std::vector<Entry>, decltype(after)> heap(after, std::move(storage));
  std::vector<char> settled(graph.node_count(), 0);

  heap.push({r.cost_to_come[init], init});
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    const NodeId u = top.node;
    if (settled[u] || !(top.cost == r.cost_to_come[u])) {
      continue;  // stale
    }
    settled[u] = 1;
    r.settled_order.push_back(u);
    if (options.stop_at == u) {
      break;
    }
    for (const CostGraph::Arc& arc : graph.out_edges(u)) {
      if (settled[arc.to]) {
        continue;
      }
      CostVector& target = r.cost_to_come[arc.to];
      if (cascade_update(target, r.cost_to_come[u] + arc.cost, eps)) {
        r.parent[arc.to] = u;
        heap.push({target, arc.to});
      }
    }
  }
  return r;
}

std::optional<std::vector<NodeId>> extract_path(const SearchResult& result, NodeId goal) {
  if (goal >= result.cost_to_come.size() || !result.reached(goal)) {
    return std::nullopt;
  }
  std::vector<NodeId> path{goal};
  while (const auto p = result.parent[path.back()]) {
    path.push_back(*p);
    if (path.size() > result.parent.size()) {
      throw std::logic_error("parent pointers contain a cycle");
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

CostVector path_cost(const CostGraph& graph, std::span<const NodeId> path) {
  CostVector total = CostVector::zeros(graph.levels());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const CostVector* best = nullptr;
    for (const CostGraph::Arc& arc : graph.out_edges(path[i])) {
      if (arc.to == path[i + 1] && (!best || lex_compare(arc.cost, *best, 0.0) == LexOrder::Less)) {
        best = &arc.cost;
      }
    }
    if (!best) {
      throw std::invalid_argument("path uses a missing edge");
    }
    total += *best;
  }
  return total;
}

std::optional<BruteForceResult> brute_force_lex(const CostGraph& graph, NodeId init, NodeId goal) {
  constexpr std::size_t kSmallGraph = 15;
  constexpr std::size_t kMaxPaths = 1'000'000;
  if (init >= graph.node_count() || goal >= graph.node_count()) {
    throw std::invalid_argument("brute_force_lex endpoint out of range");
  }
  const bool guarded = graph.node_count() > kSmallGraph;

  std::optional<BruteForceResult> best;
  std::vector<char> on_path(graph.node_count(), 0);
  std::vector<NodeId> path{init};
  std::size_t visited = 0;
  on_path[init] = 1;

  const std::function<void(NodeId, const CostVector&)> dfs = [&](NodeId u, const CostVector& cost) {
    if (guarded && ++visited > kMaxPaths) {
      throw EnumerationLimitError("brute_force_lex: more than 1e6 simple paths");
    }
    if (u == goal) {
      if (!best || lex_compare(cost, best->cost, 0.0) == LexOrder::Less) {
        best = BruteForceResult{cost, path};
      }
      return;
    }
    for (const CostGraph::Arc& arc : graph.out_edges(u)) {
      if (on_path[arc.to]) {
        continue;
      }
      on_path[arc.to] = 1;
      path.push_back(arc.to);
      dfs(arc.to, cost + arc.cost);
      path.pop_back();
      on_path[arc.to] = 0;
    }
  };
  dfs(init, CostVector::zeros(graph.levels()));
  return best;
}

}  // namespace lexplan
