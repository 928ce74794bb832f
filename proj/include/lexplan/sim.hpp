#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexplan/costs.hpp"
#include "lexplan/geometry.hpp"
#include "lexplan/graph.hpp"
#include "lexplan/obstacles.hpp"
#include "lexplan/planner.hpp"

namespace lexplan {

/// Translation of a cluster at time `t`, relative to its authored position.
struct MotionKeyframe {
  double t = 0.0;
  Point offset;
};

/// Rigid point cluster. Empty motion means static; otherwise the offset is
/// interpolated linearly between keyframes and held outside their span.
struct ObstacleCluster {
  std::vector<Point> points;
  std::vector<MotionKeyframe> motion;

  Point offset_at(double t) const;
};

struct SimSettings {
  double tick_dt = 0.2;
  double robot_speed = 0.5;
  int max_ticks = 1000;
  std::uint64_t seed = 0;
};

struct Scenario {
  std::string name;
  ReferencePath reference_path;
  Pose2D robot_start;
  std::vector<ObstacleCluster> obstacles = {};
  GraphConfig graph_config = {};
  CostConfig cost_config = {};
  PlannerConfig planner_config = {};
  SimSettings sim = {};

  /// World obstacle points at time `t`.
  std::vector<Point> obstacle_points_at(double t) const;
  void validate() const;
};

/// Range-limited sensor with memory of points seen earlier.
///
/// Points inside the range are reported as currently observed. Remembered
/// points outside the range are kept; remembered points inside the range are
/// replaced by the current observation.
class SensorMemory {
 public:
  ObstacleSet sense(std::span<const Point> world, Point robot, double range);
  std::span<const Point> remembered() const { return memory_; }

 private:
  std::vector<Point> memory_;
};

struct ReplanEvent {
  int tick = 0;
  ReplanRecord record;
  /// Searched part of the emitted path, from the robot to the lattice goal.
  /// Empty when the replan failed.
  std::vector<Point> path;
};

struct RunMetrics {
  std::size_t replan_count = 0;
  bool goal_reached = false;
  int ticks_elapsed = 0;
  /// Robot pose before the first tick and after every tick.
  std::vector<Pose2D> executed_path;
  /// Planner output of every tick.
  std::vector<OutputKind> outputs;
  /// Canonical (risk, heading, distance) integrated over the executed trace.
  CostVector accumulated_costs = CostVector::zeros(3);
  std::vector<ReplanEvent> replans;
  int hold_intervals = 0;
  int hold_ticks = 0;
  /// Smallest sampled distance between the trace and the true obstacles.
  double min_clearance = std::numeric_limits<double>::infinity();
  bool collided = false;
  std::string failure;
};

/// Closed-loop world: scripted obstacles, sensing, planner and a robot that
/// follows the active path at constant speed.
class Simulation {
 public:
  explicit Simulation(Scenario scenario);

  /// Advances one tick. Returns nullopt once the run has finished.
  std::optional<PlannerOutput> step();
  bool finished() const { return finished_; }

  const Scenario& scenario() const { return scenario_; }
  const Planner& planner() const { return planner_; }
  const RunMetrics& metrics() const { return metrics_; }
  const Pose2D& robot() const { return robot_; }
  double time() const { return tick_ * scenario_.sim.tick_dt; }
  /// Obstacle set the planner saw on the last tick.
  const ObstacleSet& sensed() const { return sensed_; }
  ObstacleSet true_obstacles() const;

 private:
  void advance_robot(const ActivePath& path);
  void record_motion(const Pose2D& before, const ObstacleSet& world);

  Scenario scenario_;
  Planner planner_;
  SensorMemory sensor_;
  ObstacleSet sensed_;
  RunMetrics metrics_;
  Pose2D robot_;
  std::optional<ReferencePath> followed_;
  std::uint64_t followed_revision_ = ~std::uint64_t{0};
  double followed_s_ = 0.0;
  int tick_ = 0;
  bool finished_ = false;
  bool holding_ = false;
};

RunMetrics run_scenario(const Scenario& scenario);

/// Runs independent scenarios on `workers` threads (0 picks the hardware
/// concurrency). Results keep the input order.
std::vector<RunMetrics> run_scenarios(std::span<const Scenario> scenarios, unsigned workers = 0);

/// Seeded scenario with a random smooth reference path and static obstacle
/// clusters scattered along it, keeping the start and goal clear.
Scenario make_random_scenario(std::uint64_t seed);

/// Deterministic uniform doubles from a 64-bit seed, identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Seeded random-waypoint schedule: the cluster offset wanders to uniform
/// targets inside [offset_lo, offset_hi] at `speed`, pausing `pause` seconds
/// at each, until `duration` is covered.
std::vector<MotionKeyframe> random_waypoint_motion(std::uint64_t seed, Point offset_lo, Point offset_hi,
                                                   double speed, double duration, double pause);

/// Densifies geometry into obstacle points.
std::vector<Point> sample_polyline(std::span<const Point> vertices, double spacing);
std::vector<Point> sample_circle(Point center, double radius, double spacing);
std::vector<Point> sample_rectangle(Point center, double width, double height, double spacing);

}  // namespace lexplan
