#include "lexplan/study.hpp"

#include "lexplan/bench.hpp"
#include "lexplan/graph.hpp"
#include "lexplan/search.hpp"

namespace lexplan {

std::vector<Hierarchy> study_hierarchies() {
  return {hierarchy_for_levels(1), hierarchy_for_levels(2), hierarchy_for_levels(3)};
}

CriteriaStudy criteria_study(const Scenario& scenario, const std::vector<Hierarchy>& hierarchies) {
  CriteriaStudy study;
  Simulation sim(scenario);
  std::optional<ObstacleSet> obstacles;
  ReferencePath reference = scenario.reference_path;
  while (sim.step()) {
    if (const auto& rec = sim.planner().last_replan()) {
      study.robot = rec->robot;
      study.tick = sim.metrics().ticks_elapsed;
      obstacles = sim.sensed();
      const double from = std::min(rec->progress, reference.length() - 1e-6);
      reference = reference.slice(from, reference.length());
      break;
    }
  }
  if (!obstacles) {
    study.robot = scenario.robot_start;
    obstacles.emplace(scenario.obstacle_points_at(0.0));
  }

  const PlanGraph graph =
      generate_graph(reference, study.robot, *obstacles, scenario.graph_config, scenario.cost_config);
  study.node_count = graph.node_count();
  const CostGraph canonical = graph.cost_graph(canonical_hierarchy());
  SearchOptions options;
  options.tie_epsilon = scenario.cost_config.tie_epsilon;
  for (const Hierarchy& h : hierarchies) {
    CriteriaStudyRow row;
    row.hierarchy = h;
    const SearchResult result = lex_search_heap(graph.cost_graph(h), graph.init_node(), options);
    if (const auto nodes = extract_path(result, graph.goal_node())) {
      row.found = true;
      row.canonical_cost = path_cost(canonical, *nodes);
      for (const NodeId v : *nodes) {
        row.path.push_back(graph.nodes()[v].pose.position());
      }
    }
    study.rows.push_back(std::move(row));
  }
  return study;
}

}  // namespace lexplan
