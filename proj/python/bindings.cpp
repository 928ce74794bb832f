#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lexplan/bench.hpp"
#include "lexplan/cli.hpp"
#include "lexplan/report.hpp"
#include "lexplan/scenario_io.hpp"
#include "lexplan/search.hpp"
#include "lexplan/study.hpp"

namespace py = pybind11;
using namespace lexplan;

namespace {

using EdgeTuple = std::tuple<NodeId, NodeId, std::vector<double>>;

CostGraph build_graph(std::size_t node_count, const std::vector<EdgeTuple>& edges) {
  if (edges.empty()) {
    throw std::invalid_argument("graph needs at least one edge to fix the number of cost levels");
  }
  std::vector<WeightedEdge> converted;
  converted.reserve(edges.size());
  for (const auto& [from, to, cost] : edges) {
    converted.push_back({from, to, CostVector(std::span<const double>(cost))});
  }
  return CostGraph(node_count, std::get<2>(edges.front()).size(), converted);
}

SearchResult search(const CostGraph& graph, NodeId init, const std::string& algorithm, double tie_epsilon) {
  SearchOptions options;
  options.tie_epsilon = tie_epsilon;
  if (algorithm == "heap") return lex_search_heap(graph, init, options);
  if (algorithm == "naive") return lex_search_naive(graph, init, options);
  throw std::invalid_argument("algorithm must be 'heap' or 'naive'");
}

std::optional<std::vector<double>> as_list(const CostVector& c) {
  if (!c.is_finite()) return std::nullopt;
  return std::vector<double>(c.values().begin(), c.values().end());
}

Scenario load(const std::string& scenario, std::optional<std::uint64_t> seed, const std::vector<std::string>& overrides) {
  return load_scenario(ScenarioArgs{scenario, seed, overrides});
}

}  // namespace

PYBIND11_MODULE(_lexplan, m) {
  m.doc() = "Lexicographic multi-criteria path planning";

  py::register_exception<ScenarioParseError>(m, "ScenarioParseError", PyExc_ValueError);
  py::register_exception<EnumerationLimitError>(m, "EnumerationLimitError", PyExc_RuntimeError);

  m.def(
      "lex_search",
      [](std::size_t node_count, const std::vector<EdgeTuple>& edges, NodeId init, const std::string& algorithm,
         double tie_epsilon) {
        const CostGraph graph = build_graph(node_count, edges);
        const SearchResult r = search(graph, init, algorithm, tie_epsilon);
        py::dict out;
        std::vector<std::optional<std::vector<double>>> costs;
        for (const CostVector& c : r.cost_to_come) costs.push_back(as_list(c));
        out["cost_to_come"] = costs;
        out["parent"] = r.parent;
        out["settled_order"] = r.settled_order;
        return out;
      },
      py::arg("node_count"), py::arg("edges"), py::arg("init"), py::arg("algorithm") = "heap",
      py::arg("tie_epsilon") = 1e-9,
      "Single-source lexicographic search. Edges are (from, to, [cost per level]).");

  m.def(
      "shortest_path",
      [](std::size_t node_count, const std::vector<EdgeTuple>& edges, NodeId init, NodeId goal,
         const std::string& algorithm, double tie_epsilon)
          -> std::optional<std::pair<std::vector<NodeId>, std::vector<double>>> {
        const CostGraph graph = build_graph(node_count, edges);
        const SearchResult r = search(graph, init, algorithm, tie_epsilon);
        auto path = extract_path(r, goal);
        if (!path) return std::nullopt;
        return std::make_pair(*path, *as_list(r.cost_to_come[goal]));
      },
      py::arg("node_count"), py::arg("edges"), py::arg("init"), py::arg("goal"), py::arg("algorithm") = "heap",
      py::arg("tie_epsilon") = 1e-9, "Returns (nodes, cost) or None when the goal is unreachable.");

  m.def(
      "brute_force",
      [](std::size_t node_count, const std::vector<EdgeTuple>& edges, NodeId init, NodeId goal)
          -> std::optional<std::pair<std::vector<NodeId>, std::vector<double>>> {
        const auto r = brute_force_lex(build_graph(node_count, edges), init, goal);
        if (!r) return std::nullopt;
        return std::make_pair(r->path, *as_list(r->cost));
      },
      py::arg("node_count"), py::arg("edges"), py::arg("init"), py::arg("goal"),
      "Exhaustive lexicographic minimum over simple paths.");

  m.def(
      "scenario_json",
      [](const std::string& scenario, std::optional<std::uint64_t> seed, const std::vector<std::string>& overrides) {
        return scenario_to_json(load(scenario, seed, overrides)).dump();
      },
      py::arg("scenario"), py::arg("seed") = py::none(), py::arg("overrides") = std::vector<std::string>{},
      "Loads and validates a scenario, returning its normalized JSON text.");

  m.def(
      "run",
      [](const std::string& scenario, std::optional<std::uint64_t> seed, const std::vector<std::string>& overrides,
         bool timing) {
        const Scenario sc = load(scenario, seed, overrides);
        RunMetrics metrics;
        {
          py::gil_scoped_release release;
          metrics = run_scenario(sc);
        }
        return std::make_pair(metrics_to_json(sc, metrics, timing).dump(), trace_csv(metrics));
      },
      py::arg("scenario"), py::arg("seed") = py::none(), py::arg("overrides") = std::vector<std::string>{},
      py::arg("timing") = false, "Runs a scenario. Returns (metrics JSON text, trace CSV text).");

  m.def(
      "criteria_study",
      [](const std::string& scenario, std::optional<std::uint64_t> seed, const std::vector<std::string>& overrides) {
        const Scenario sc = load(scenario, seed, overrides);
        return study_to_json(sc, criteria_study(sc)).dump();
      },
      py::arg("scenario"), py::arg("seed") = py::none(), py::arg("overrides") = std::vector<std::string>{},
      "Plans once under each study hierarchy. Returns JSON text.");

  m.def(
      "benchmark",
      [](const std::vector<double>& densities, const std::vector<int>& k_levels, int repetitions,
         std::uint64_t seed) {
        BenchmarkOptions options;
        options.densities = densities;
        options.k_levels = k_levels;
        options.repetitions = repetitions;
        options.seed = seed;
        std::vector<BenchmarkRecord> records;
        {
          py::gil_scoped_release release;
          records = run_benchmark(options);
        }
        return bench_csv(records);
      },
      py::arg("densities") = BenchmarkOptions{}.densities, py::arg("k_levels") = BenchmarkOptions{}.k_levels,
      py::arg("repetitions") = BenchmarkOptions{}.repetitions, py::arg("seed") = 0,
      "Times lattice construction and both searches. Returns CSV text.");

  m.def("scenario_directory", [] { return scenario_directory().string(); });
}
