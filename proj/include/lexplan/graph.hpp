#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "lexplan/costs.hpp"
#include "lexplan/geometry.hpp"
#include "lexplan/obstacles.hpp"
#include "lexplan/search.hpp"

namespace lexplan {

/// No collision-free goal node exists at the final station.
class GraphGenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Connectivity {
  /// Three forward neighbours plus the two lateral neighbours on the same station.
  Forward5,
  /// Forward5 plus the three backward neighbours.
  Full8,
};

struct GraphConfig {
  double d_span = 1.0;
  double d_roll = 7.0;
  double d_sensor = 5.0;
  double station_step = 0.5;
  double lateral_step = 0.25;
  double rollout_length = 2.0;
  double rollin_length = 2.0;
  double inflation_radius = 0.3;
  Connectivity connectivity = Connectivity::Forward5;
  /// Largest allowed angle between an edge and the reference heading at its
  /// source station. Backward Full8 edges need at least pi to survive.
  double max_heading_change = kPi / 2.0;

  void validate() const;
};

struct LatticeNode {
  int station = 0;  // 1-based; station 0 is the robot
  int lateral = 0;  // signed multiple of lateral_step, positive to the left
  Pose2D pose;
};

/// Lattice graph over the corridor around a reference path. Edge costs are
/// stored in canonical (risk, heading, distance) order; cost_graph() projects
/// them onto a hierarchy for searching.
class PlanGraph {
 public:
  PlanGraph(ReferencePath reference, std::vector<LatticeNode> nodes, std::vector<WeightedEdge> edges,
            NodeId init, NodeId goal);

  const ReferencePath& reference() const { return reference_; }
  std::span<const LatticeNode> nodes() const { return nodes_; }
  std::span<const WeightedEdge> edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  NodeId init_node() const { return init_; }
  NodeId goal_node() const { return goal_; }
  int station_count() const;

  CostGraph cost_graph(const Hierarchy& hierarchy) const;

 private:
  ReferencePath reference_;
  std::vector<LatticeNode> nodes_;
  std::vector<WeightedEdge> edges_;
  NodeId init_;
  NodeId goal_;
};

/// Builds the roll-out/roll-in lattice ahead of `robot` along `ref`.
///
/// Stations sit every station_step of arclength past the robot's projection,
/// up to d_roll or the end of the path. The corridor half-width ramps from the
/// robot's lateral offset to d_span over rollout_length and back to zero over
/// rollin_length, both with a cosine blend. Nodes closer than inflation_radius
/// to an obstacle are dropped; edges are dropped when any sample along them is
/// closer than inflation_radius + integration_step, which keeps continuous
/// clearance of at least inflation_radius + integration_step / 2.
///
/// Throws CollisionError if the robot is in collision and GraphGenerationError
/// when the goal node on the reference path is blocked.
PlanGraph generate_graph(const ReferencePath& ref, const Pose2D& robot, const ObstacleSet& obstacles,
                         const GraphConfig& gcfg, const CostConfig& ccfg);

/// Half-width of the corridor at distance `t` into a lattice of total depth
/// `depth`, starting from lateral offset `start_offset`.
double corridor_half_width(double t, double depth, double start_offset, const GraphConfig& gcfg);

/// Closest node to `p`; ties go to the lower id.
NodeId nearest_node(const PlanGraph& graph, Point p);
inline NodeId nearest_node(const PlanGraph& graph, const Pose2D& p) { return nearest_node(graph, p.position()); }

/// True if any sample of [a, b] (spacing at most `step`) is closer than `clearance` to an obstacle.
bool segment_blocked(Point a, Point b, const ObstacleSet& obstacles, double clearance, double step);

}  // namespace lexplan
