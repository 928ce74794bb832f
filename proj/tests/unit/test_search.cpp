#include <doctest.h>

#include "lexplan/search.hpp"
#include "../support/test_graphs.hpp"

using namespace lexplan;
using lexplan::testing::random_dyadic_graph;

namespace {

CostGraph diamond() {
  // 0 = init, 1 = A, 2 = B, 3 = goal
  const std::vector<WeightedEdge> edges{
      {0, 1, {0, 0, 1}}, {0, 2, {0, 0, 1}}, {1, 3, {1, 0, 1}}, {2, 3, {0, 3, 1}}};
  return CostGraph(4, 3, edges);
}

CostGraph triangle() {
  // 0 = init, 1 = M, 2 = goal
  const std::vector<WeightedEdge> edges{{0, 2, {0, 5, 1}}, {0, 1, {0, 1, 1}}, {1, 2, {0, 1, 1.5}}};
  return CostGraph(3, 3, edges);
}

template <typename Search>
void check_examples(Search search) {
  SUBCASE("single edge") {
    const std::vector<WeightedEdge> edges{{0, 1, {0, 0, 1}}};
    const auto r = search(CostGraph(2, 3, edges), 0, SearchOptions{});
    CHECK(r.cost_to_come[1] == CostVector{0, 0, 1});
    CHECK(r.parent[1] == NodeId{0});
    CHECK(r.cost_to_come[0] == CostVector{0, 0, 0});
    CHECK_FALSE(r.parent[0].has_value());
  }
  SUBCASE("diamond") {
    const auto r = search(diamond(), 0, SearchOptions{});
    CHECK(r.cost_to_come[3] == CostVector{0, 3, 2});
    CHECK(*extract_path(r, 3) == std::vector<NodeId>{0, 2, 3});
  }
  SUBCASE("triangle tie on the primary level") {
    const auto r = search(triangle(), 0, SearchOptions{});
    CHECK(r.cost_to_come[2] == CostVector{0, 2, 2.5});
    CHECK(*extract_path(r, 2) == std::vector<NodeId>{0, 1, 2});
  }
  SUBCASE("no edges") {
    const auto r = search(CostGraph(3, 2, {}), 1, SearchOptions{});
    CHECK(r.reached(1));
    CHECK_FALSE(r.reached(0));
    CHECK_FALSE(r.reached(2));
    CHECK(r.settled_order == std::vector<NodeId>{1});
  }
  SUBCASE("init out of range") { CHECK_THROWS_AS(search(diamond(), 9, SearchOptions{}), std::invalid_argument); }
}

}  // namespace

TEST_CASE("naive search examples") {
  check_examples([](const CostGraph& g, NodeId i, const SearchOptions& o) { return lex_search_naive(g, i, o); });
}

TEST_CASE("heap search examples") {
  check_examples([](const CostGraph& g, NodeId i, const SearchOptions& o) { return lex_search_heap(g, i, o); });
}

TEST_CASE("extract_path edge cases") {
  const auto r = lex_search_heap(diamond(), 0);
  CHECK(*extract_path(r, 0) == std::vector<NodeId>{0});
  const auto iso = lex_search_heap(CostGraph(2, 1, {}), 0);
  CHECK_FALSE(extract_path(iso, 1).has_value());
}

TEST_CASE("brute force oracle examples") {
  const auto d = brute_force_lex(diamond(), 0, 3);
  REQUIRE(d.has_value());
  CHECK(d->cost == CostVector{0, 3, 2});
  CHECK(d->path == std::vector<NodeId>{0, 2, 3});

  const std::vector<WeightedEdge> one{{0, 1, {2, 1}}};
  CHECK(brute_force_lex(CostGraph(2, 2, one), 0, 1)->cost == CostVector{2, 1});
  CHECK_FALSE(brute_force_lex(CostGraph(3, 2, one), 0, 2).has_value());
}

TEST_CASE("brute force refuses huge enumerations") {
  std::vector<WeightedEdge> edges;
  const NodeId n = 20;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = 0; b < n; ++b) {
      if (a != b) edges.push_back({a, b, {1.0}});
    }
  }
  CHECK_THROWS_AS(brute_force_lex(CostGraph(n, 1, edges), 0, n - 1), EnumerationLimitError);
}

TEST_CASE("naive and heap agree on random graphs") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto g = random_dyadic_graph(seed, 50, 0.08);
    const CostGraph graph = g.graph();
    SearchOptions exact;
    exact.tie_epsilon = 0.0;
    const auto a = lex_search_naive(graph, g.init, exact);
    const auto b = lex_search_heap(graph, g.init, exact);
    for (NodeId v = 0; v < g.node_count; ++v) {
      REQUIRE(a.cost_to_come[v] == b.cost_to_come[v]);
    }
  }
}

TEST_CASE("settled nodes come out in lexicographic order") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_dyadic_graph(seed + 5000, 40, 0.1);
    const CostGraph graph = g.graph();
    for (const auto& r : {lex_search_naive(graph, g.init), lex_search_heap(graph, g.init)}) {
      for (std::size_t i = 1; i < r.settled_order.size(); ++i) {
        CHECK(lex_compare(r.cost_to_come[r.settled_order[i - 1]], r.cost_to_come[r.settled_order[i]], 0.0) !=
              LexOrder::Greater);
      }
    }
  }
}

TEST_CASE("parent links reproduce the cost-to-come") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_dyadic_graph(seed + 9000, 30, 0.15);
    const CostGraph graph = g.graph();
    const auto r = lex_search_heap(graph, g.init);
    for (NodeId v = 0; v < g.node_count; ++v) {
      if (!r.reached(v)) continue;
      const auto path = extract_path(r, v);
      REQUIRE(path.has_value());
      CHECK(path->front() == g.init);
      CHECK(path_cost(graph, *path) == r.cost_to_come[v]);
    }
  }
}

TEST_CASE("secondary level never loses to a path with the same primary cost") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto g = random_dyadic_graph(seed + 20000, 9, 0.35, 2);
    const CostGraph graph = g.graph();
    const auto r = lex_search_naive(graph, g.init, SearchOptions{0.0, std::nullopt});
    if (!r.reached(g.goal)) continue;
    // Enumerate simple paths by brute force on a primary-only projection.
    std::vector<WeightedEdge> primary;
    for (const auto& e : g.edges) primary.push_back({e.from, e.to, {e.cost[0]}});
    const auto best_primary = brute_force_lex(CostGraph(g.node_count, 1, primary), g.init, g.goal);
    REQUIRE(best_primary.has_value());
    CHECK(r.cost_to_come[g.goal][0] == best_primary->cost[0]);
    const auto oracle = brute_force_lex(graph, g.init, g.goal);
    CHECK(r.cost_to_come[g.goal][1] <= oracle->cost[1]);
  }
}

TEST_CASE("tie_epsilon merges nearly equal primary costs") {
  // Two routes whose primary costs differ by 1e-12; the secondary level decides.
  const std::vector<WeightedEdge> edges{{0, 1, {1.0, 5.0}}, {0, 2, {1.0 + 1e-12, 1.0}},
                                        {1, 3, {1.0, 1.0}}, {2, 3, {1.0, 1.0}}};
  const CostGraph graph(4, 2, edges);
  SearchOptions loose;
  loose.tie_epsilon = 1e-9;
  CHECK(*extract_path(lex_search_naive(graph, 0, loose), 3) == std::vector<NodeId>{0, 2, 3});
  SearchOptions exact;
  exact.tie_epsilon = 0.0;
  CHECK(*extract_path(lex_search_naive(graph, 0, exact), 3) == std::vector<NodeId>{0, 1, 3});
}

TEST_CASE("early exit settles the goal with the same cost") {
  const auto g = random_dyadic_graph(77, 50, 0.1);
  const CostGraph graph = g.graph();
  SearchOptions stop;
  stop.stop_at = g.goal;
  const auto full = lex_search_heap(graph, g.init);
  const auto early = lex_search_heap(graph, g.init, stop);
  CHECK(early.cost_to_come[g.goal] == full.cost_to_come[g.goal]);
  CHECK(early.settled_order.size() <= full.settled_order.size());
}
