#include "lexplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace lexplan {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Arclength window [from, from + span] of a polyline, sampled with spacing at most `step`.
std::vector<Point> window_samples(const ReferencePath& line, double from, double span, double step) {
  const double to = std::min(from + span, line.length());
  const double len = std::max(0.0, to - from);
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
  std::vector<Point> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out.push_back(line.point_at(from + len * static_cast<double>(k) / static_cast<double>(n)));
  }
  return out;
}

}  // namespace

ActivePath ActivePath::from_reference(const ReferencePath& ref) {
  ActivePath path;
  const auto verts = ref.vertices();
  const auto headings = ref.segment_headings();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    path.waypoints.emplace_back(verts[i], headings[std::min(i, headings.size() - 1)]);
  }
  return path;
}

std::vector<Point> ActivePath::positions() const {
  std::vector<Point> out;
  out.reserve(waypoints.size());
  for (const Pose2D& w : waypoints) {
    out.push_back(w.position());
  }
  return out;
}

std::optional<ReferencePath> ActivePath::polyline() const {
  std::vector<Point> pts;
  for (const Pose2D& w : waypoints) {
    if (pts.empty() || distance(pts.back(), w.position()) > 1e-12) {
      pts.push_back(w.position());
    }
  }
  if (pts.size() < 2) {
    return std::nullopt;
  }
  return ReferencePath(std::move(pts));
}

OutputKind kind_of(const PlannerOutput& out) {
  return static_cast<OutputKind>(out.index());
}

std::string_view to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::FollowPath:
      return "follow";
    case OutputKind::HoldPosition:
      return "hold";
    case OutputKind::GoalReached:
      return "goal";
  }
  return "?";
}

void PlannerConfig::validate() const {
  if (hierarchy.empty() || hierarchy.size() > CostVector::kMaxLevels) {
    throw std::invalid_argument("planner_config.hierarchy must name 1 to 8 criteria");
  }
  if (!(goal_tolerance > 0.0)) {
    throw std::invalid_argument("planner_config.goal_tolerance must be positive");
  }
  if (!(hold_distance > 0.0)) {
    throw std::invalid_argument("planner_config.hold_distance must be positive");
  }
  if (!(risk_increase_fraction >= 0.0)) {
    throw std::invalid_argument("planner_config.risk_increase_fraction must be non-negative");
  }
}

bool path_blocked(const ActivePath& path, const ObstacleSet& obstacles, const GraphConfig& gcfg,
                  const Pose2D& from, double sample_step) {
  if (obstacles.empty() || path.waypoints.empty()) {
    return false;
  }
  const double clearance = gcfg.inflation_radius + sample_step / 2.0;
  const auto line = path.polyline();
  if (!line) {
    return obstacles.any_within(path.waypoints.front().position(), clearance);
  }
  const double s = project_onto_path(from.position(), *line).arclength;
  for (const Point& p : window_samples(*line, s, gcfg.d_sensor, sample_step)) {
    if (obstacles.any_within(p, clearance)) {
      return true;
    }
  }
  return false;
}

double risk_ahead(const ActivePath& path, const ObstacleSet& obstacles, const GraphConfig& gcfg,
                  const CostConfig& ccfg, const Pose2D& from) {
  const auto line = path.polyline();
  if (!line || obstacles.empty()) {
    return 0.0;
  }
  const double s = project_onto_path(from.position(), *line).arclength;
  const auto samples = window_samples(*line, s, gcfg.d_sensor, ccfg.integration_step);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const Point mid = 0.5 * (samples[i] + samples[i + 1]);
    total += risk_at(mid, obstacles, ccfg) * distance(samples[i], samples[i + 1]);
  }
  return total;
}

Planner::Planner(ReferencePath reference, GraphConfig gcfg, CostConfig ccfg, PlannerConfig pcfg)
    : reference_(std::move(reference)),
      gcfg_(gcfg),
      ccfg_(ccfg),
      pcfg_(std::move(pcfg)),
      current_(ActivePath::from_reference(reference_)) {
  gcfg_.validate();
  ccfg_.validate();
  pcfg_.validate();
}

bool Planner::replan_needed(const Pose2D& robot, const ObstacleSet& obstacles) const {
  if (holding_) {
    return true;
  }
  const auto line = current_.polyline();
  if (!line) {
    return true;
  }
  if (std::fabs(project_onto_path(robot.position(), *line).lateral_offset) > gcfg_.lateral_step / 2.0) {
    return true;
  }
  if (path_blocked(current_, obstacles, gcfg_, robot, ccfg_.integration_step)) {
    return true;
  }
  if (pcfg_.risk_trigger) {
    const double now = risk_ahead(current_, obstacles, gcfg_, ccfg_, robot);
    const double before = risk_ahead(current_, emission_obstacles_, gcfg_, ccfg_, robot);
    if (now > before * (1.0 + pcfg_.risk_increase_fraction) && now - before > 1e-9) {
      return true;
    }
  }
  return false;
}

std::optional<ActivePath> Planner::replan(const Pose2D& robot, const ObstacleSet& obstacles,
                                          ReplanRecord& record) {
  const double from = std::min(progress_, reference_.length() - 1e-6);
  const ReferencePath tail = reference_.slice(from, reference_.length());

  const auto t0 = Clock::now();
  std::optional<PlanGraph> graph;
  try {
    graph.emplace(generate_graph(tail, robot, obstacles, gcfg_, ccfg_));
  } catch (const GraphGenerationError&) {
    record.construction_seconds = seconds_since(t0);
    return std::nullopt;
  }
  record.construction_seconds = seconds_since(t0);
  record.node_count = graph->node_count();
  record.edge_count = graph->edge_count();

  const auto t1 = Clock::now();
  const CostGraph costs = graph->cost_graph(pcfg_.hierarchy);
  SearchOptions options;
  options.tie_epsilon = ccfg_.tie_epsilon;
  const SearchResult result = pcfg_.search == SearchAlgorithm::Naive
                                  ? lex_search_naive(costs, graph->init_node(), options)
                                  : lex_search_heap(costs, graph->init_node(), options);
  const auto nodes = extract_path(result, graph->goal_node());
  record.search_seconds = seconds_since(t1);
  if (!nodes) {
    return std::nullopt;
  }

  std::vector<Point> pts{robot.position()};
  const auto push = [&pts](Point p) {
    if (distance(pts.back(), p) > 1e-9) {
      pts.push_back(p);
    }
  };
  for (const NodeId v : *nodes) {
    push(graph->nodes()[v].pose.position());
  }
  const Point goal = graph->nodes()[graph->goal_node()].pose.position();
  const std::size_t split = pts.size() - 1;

  // The lattice edges already keep a wider margin; this catches the link from
  // the robot to the first lattice node.
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (segment_blocked(pts[i], pts[i + 1], obstacles, gcfg_.inflation_radius + ccfg_.integration_step / 2.0,
                        ccfg_.integration_step)) {
      return std::nullopt;
    }
  }

  const double goal_s = project_onto_path(goal, tail).arclength;
  const auto cum = tail.cumulative_arclength();
  const auto verts = tail.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (cum[i] > goal_s + 1e-9) {
      push(verts[i]);
    }
  }
  if (distance(pts.back(), reference_.back()) > 1e-9) {
    pts.push_back(reference_.back());
  }

  ActivePath path;
  path.split_index = split;
  path.cost = result.cost_to_come[graph->goal_node()];
  path.revision = current_.revision + 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double h = i + 1 < pts.size() ? heading_between(pts[i], pts[i + 1])
                     : i > 0            ? heading_between(pts[i - 1], pts[i])
                                        : robot.heading();
    path.waypoints.emplace_back(pts[i], h);
  }
  record.path_cost = path.cost;
  return path;
}

PlannerOutput Planner::plan_step(const Pose2D& robot, const ObstacleSet& obstacles) {
  last_replan_.reset();
  if (distance(robot.position(), reference_.back()) <= pcfg_.goal_tolerance) {
    holding_ = false;
    return GoalReached{};
  }
  if (obstacles.any_within(robot.position(), gcfg_.inflation_radius)) {
    throw CollisionError("robot pose is inside an inflated obstacle");
  }
  const PathProjection proj =
      project_onto_path(robot.position(), reference_, progress_, progress_ + gcfg_.d_roll);
  progress_ = std::max(progress_, proj.arclength);

  if (!replan_needed(robot, obstacles)) {
    return FollowPath{current_};
  }

  ++replan_count_;
  ReplanRecord record;
  record.robot = robot;
  record.progress = progress_;
  auto path = replan(robot, obstacles, record);
  record.success = path.has_value();
  last_replan_ = record;
  if (!path) {
    GraphConfig near = gcfg_;
    near.d_sensor = pcfg_.hold_distance;
    if (!holding_ && !path_blocked(current_, obstacles, near, robot, ccfg_.integration_step)) {
      return FollowPath{current_};
    }
    holding_ = true;
    return HoldPosition{robot};
  }
  holding_ = false;
  current_ = std::move(*path);
  emission_obstacles_ = obstacles;
  return FollowPath{current_};
}

}  // namespace lexplan
