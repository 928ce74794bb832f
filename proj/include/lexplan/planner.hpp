#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "lexplan/costs.hpp"
#include "lexplan/geometry.hpp"
#include "lexplan/graph.hpp"
#include "lexplan/obstacles.hpp"
#include "lexplan/search.hpp"

namespace lexplan {

/// Executed path: the searched lattice segment followed by the untouched tail
/// of the reference path.
struct ActivePath {
  std::vector<Pose2D> waypoints;
  /// First waypoint of the reference-path tail (the lattice goal node).
  std::size_t split_index = 0;
  /// Cost of the lattice segment in the planner's hierarchy; empty while the
  /// path is still the reference path itself.
  std::optional<CostVector> cost;
  /// Bumped each time the planner emits a new path.
  std::uint64_t revision = 0;

  static ActivePath from_reference(const ReferencePath& ref);
  std::vector<Point> positions() const;
  /// Waypoint polyline with repeated points removed; nullopt if degenerate.
  std::optional<ReferencePath> polyline() const;
};

struct FollowPath {
  ActivePath path;
};
struct HoldPosition {
  Pose2D state;
};
struct GoalReached {};

using PlannerOutput = std::variant<FollowPath, HoldPosition, GoalReached>;

enum class OutputKind { FollowPath, HoldPosition, GoalReached };
OutputKind kind_of(const PlannerOutput& out);
std::string_view to_string(OutputKind kind);

enum class SearchAlgorithm { Naive, Heap };

struct PlannerConfig {
  Hierarchy hierarchy = canonical_hierarchy();
  double goal_tolerance = 0.3;
  /// Replan when newly sensed obstacles raise the risk of the path ahead.
  bool risk_trigger = true;
  double risk_increase_fraction = 0.2;
  /// After a failed replan the robot keeps following its current path while
  /// that path is clear for this distance ahead, and holds otherwise.
  double hold_distance = 2.0;
  SearchAlgorithm search = SearchAlgorithm::Heap;

  void validate() const;
};

/// True if the stretch of `path` within gcfg.d_sensor ahead of `from` comes
/// closer than inflation_radius + sample_step / 2 to an obstacle. Samples are
/// at most `sample_step` apart, so an unblocked stretch keeps a continuous
/// clearance of at least inflation_radius.
bool path_blocked(const ActivePath& path, const ObstacleSet& obstacles, const GraphConfig& gcfg,
                  const Pose2D& from, double sample_step);

/// Risk integral over the d_sensor window of `path` ahead of `from`.
double risk_ahead(const ActivePath& path, const ObstacleSet& obstacles, const GraphConfig& gcfg,
                  const CostConfig& ccfg, const Pose2D& from);

struct ReplanRecord {
  Pose2D robot;
  /// Arclength on the reference path where the lattice was rooted.
  double progress = 0.0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double construction_seconds = 0.0;
  double search_seconds = 0.0;
  std::optional<CostVector> path_cost;
  bool success = false;
};

/// Receding-horizon planner. Owns the active path; not thread-safe.
class Planner {
 public:
  Planner(ReferencePath reference, GraphConfig gcfg, CostConfig ccfg, PlannerConfig pcfg = {});

  /// One planning tick. Throws CollisionError if `robot` is inside an
  /// inflated obstacle.
  PlannerOutput plan_step(const Pose2D& robot, const ObstacleSet& obstacles);

  const ReferencePath& reference() const { return reference_; }
  const ActivePath& current() const { return current_; }
  std::size_t replan_count() const { return replan_count_; }
  /// Set when the most recent plan_step ran a replan.
  const std::optional<ReplanRecord>& last_replan() const { return last_replan_; }
  double progress() const { return progress_; }
  bool holding() const { return holding_; }

  const GraphConfig& graph_config() const { return gcfg_; }
  const CostConfig& cost_config() const { return ccfg_; }
  const PlannerConfig& planner_config() const { return pcfg_; }

 private:
  bool replan_needed(const Pose2D& robot, const ObstacleSet& obstacles) const;
  std::optional<ActivePath> replan(const Pose2D& robot, const ObstacleSet& obstacles, ReplanRecord& record);

  ReferencePath reference_;
  GraphConfig gcfg_;
  CostConfig ccfg_;
  PlannerConfig pcfg_;
  ActivePath current_;
  ObstacleSet emission_obstacles_;
  double progress_ = 0.0;
  bool holding_ = false;
  std::size_t replan_count_ = 0;
  std::optional<ReplanRecord> last_replan_;
};

}  // namespace lexplan
