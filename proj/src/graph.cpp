#include "lexplan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <cstdint>
#include <limits>

namespace lexplan {

void GraphConfig::validate() const {
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(d_span) || !positive(d_roll) || !positive(d_sensor) || !positive(station_step) ||
      !positive(lateral_step) || !positive(rollout_length) || !positive(rollin_length)) {
    throw std::invalid_argument("graph_config lengths must be positive");
  }
  if (!(d_roll > d_sensor)) {
    throw std::invalid_argument("graph_config.d_roll must exceed graph_config.d_sensor");
  }
  if (rollout_length + rollin_length > d_roll) {
    throw std::invalid_argument("graph_config rollout_length + rollin_length must not exceed d_roll");
  }
  if (lateral_step > d_span) {
    throw std::invalid_argument("graph_config.lateral_step must not exceed d_span");
  }
  if (!(inflation_radius >= 0.0)) {
    throw std::invalid_argument("graph_config.inflation_radius must be non-negative");
  }
  if (!(max_heading_change >= 0.0)) {
    throw std::invalid_argument("graph_config.max_heading_change must be non-negative");
  }
}

PlanGraph::PlanGraph(ReferencePath reference, std::vector<LatticeNode> nodes,
                     std::vector<WeightedEdge> edges, NodeId init, NodeId goal)
    : reference_(std::move(reference)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      init_(init),
      goal_(goal) {
  if (init_ >= nodes_.size() || goal_ >= nodes_.size()) {
    throw std::invalid_argument("plan graph init/goal out of range");
  }
}

int PlanGraph::station_count() const {
  int stations = 0;
  for (const LatticeNode& n : nodes_) {
    stations = std::max(stations, n.station);
  }
  return stations;
}

CostGraph PlanGraph::cost_graph(const Hierarchy& hierarchy) const {
  std::vector<WeightedEdge> projected;
  projected.reserve(edges_.size());
  for (const WeightedEdge& e : edges_) {
    projected.push_back({e.from, e.to, select_levels(e.cost, hierarchy)});
  }
  return CostGraph(nodes_.size(), hierarchy.size(), projected);
}

double corridor_half_width(double t, double depth, double start_offset, const GraphConfig& gcfg) {
  const double out = t >= gcfg.rollout_length
                         ? gcfg.d_span
                         : start_offset + (gcfg.d_span - start_offset) *
                                              (1.0 - std::cos(kPi * t / gcfg.rollout_length)) / 2.0;
  const double rollin_start = depth - gcfg.rollin_length;
  const double in = t <= rollin_start
                        ? gcfg.d_span
                        : gcfg.d_span * (1.0 + std::cos(kPi * (t - rollin_start) / gcfg.rollin_length)) / 2.0;
  return std::max(0.0, std::min(out, in));
}

namespace {

NodeId nearest_in(std::span<const LatticeNode> nodes, Point p) {
  NodeId best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d = distance(nodes[i].pose.position(), p);
    if (d < best_d) {
      best_d = d;
      best = static_cast<NodeId>(i);
    }
  }
  return best;
}

}  // namespace

bool segment_blocked(Point a, Point b, const ObstacleSet& obstacles, double clearance, double step) {
  if (obstacles.empty()) {
    return false;
  }
  for (const Point& p : sample_segment(a, b, step)) {
    if (obstacles.any_within(p, clearance)) {
      return true;
    }
  }
  return false;
}

PlanGraph generate_graph(const ReferencePath& ref, const Pose2D& robot, const ObstacleSet& obstacles,
                         const GraphConfig& gcfg, const CostConfig& ccfg) {
  gcfg.validate();
  ccfg.validate();
  if (obstacles.any_within(robot.position(), gcfg.inflation_radius)) {
    throw CollisionError("robot pose is inside an inflated obstacle");
  }

  const PathProjection proj = project_onto_path(robot.position(), ref);
  const double s0 = proj.arclength;
  const double start_offset = std::fabs(proj.lateral_offset);
  const double depth = std::min(gcfg.d_roll, ref.length() - s0);
  const int stations =
      depth > 0.0 ? std::max(1, static_cast<int>(std::ceil(depth / gcfg.station_step - 1e-9))) : 1;

  std::vector<LatticeNode> nodes;
  // Per station: lateral extent and node id per lateral index (-1 when pruned).
  std::vector<int> half_count(static_cast<std::size_t>(stations) + 1, 0);
  std::vector<std::vector<std::int64_t>> ids(static_cast<std::size_t>(stations) + 1);
  std::vector<double> station_s(static_cast<std::size_t>(stations) + 1, s0);

  for (int i = 1; i <= stations; ++i) {
    const double t = std::min(i * gcfg.station_step, std::max(depth, 0.0));
    const double s = i == stations ? std::min(s0 + std::max(depth, 0.0), ref.length()) : s0 + t;
    const double half_width = i == stations ? 0.0 : corridor_half_width(t, depth, start_offset, gcfg);
    const int count = static_cast<int>(std::floor(half_width / gcfg.lateral_step + 1e-9));
    const auto si = static_cast<std::size_t>(i);
    station_s[si] = s;
    half_count[si] = count;
    ids[si].assign(static_cast<std::size_t>(2 * count + 1), -1);
    const Point base = ref.point_at(s);
    const Point normal = ref.left_normal_at(s);
    const double heading = ref.heading_at(s);
    for (int j = -count; j <= count; ++j) {
      const Point pos = base + (j * gcfg.lateral_step) * normal;
      if (obstacles.any_within(pos, gcfg.inflation_radius)) {
        continue;
      }
      ids[si][static_cast<std::size_t>(j + count)] = static_cast<std::int64_t>(nodes.size());
      nodes.push_back({i, j, Pose2D(pos, heading)});
    }
  }

  const auto lookup = [&](int i, int j) -> std::int64_t {
    if (i < 1 || i > stations) return -1;
    const auto si = static_cast<std::size_t>(i);
    if (j < -half_count[si] || j > half_count[si]) return -1;
    return ids[si][static_cast<std::size_t>(j + half_count[si])];
  };

  const std::int64_t goal = lookup(stations, 0);
  if (goal < 0) {
    throw GraphGenerationError("goal node on the reference path is blocked");
  }

  std::vector<std::pair<int, int>> offsets = {{1, -1}, {1, 0}, {1, 1}, {0, -1}, {0, 1}};
  if (gcfg.connectivity == Connectivity::Full8) {
    offsets.insert(offsets.end(), {{-1, -1}, {-1, 0}, {-1, 1}});
  }
  const double edge_clearance = gcfg.inflation_radius + ccfg.integration_step;

  std::vector<WeightedEdge> edges;
  edges.reserve(nodes.size() * offsets.size());
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const LatticeNode& from = nodes[id];
    const double ref_heading = ref.heading_at(station_s[static_cast<std::size_t>(from.station)]);
    for (const auto& [di, dj] : offsets) {
      const std::int64_t to = lookup(from.station + di, from.lateral + dj);
      if (to < 0) {
        continue;
      }
      const Point a = from.pose.position();
      const Point b = nodes[static_cast<std::size_t>(to)].pose.position();
      if (a == b) {
        continue;  // stations collapsed at the path end
      }
      if (angular_difference(heading_between(a, b), ref_heading) > gcfg.max_heading_change + 1e-12) {
        continue;
      }
      if (segment_blocked(a, b, obstacles, edge_clearance, ccfg.integration_step)) {
        continue;
      }
      const std::array<Point, 2> geometry{a, b};
      edges.push_back({static_cast<NodeId>(id), static_cast<NodeId>(to),
                       edge_cost(geometry, obstacles, ref, ccfg)});
    }
  }

  const NodeId init = nearest_in(nodes, robot.position());
  return PlanGraph(ref, std::move(nodes), std::move(edges), init, static_cast<NodeId>(goal));
}

NodeId nearest_node(const PlanGraph& graph, Point p) {
  if (graph.node_count() == 0) {
    throw std::invalid_argument("nearest_node on an empty graph");
  }
  return nearest_in(graph.nodes(), p);
}

}  // namespace lexplan
