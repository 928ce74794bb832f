#include <doctest.h>

#include <cmath>

#include "lexplan/planner.hpp"
#include "lexplan/sim.hpp"

using namespace lexplan;

namespace {

const ReferencePath kStraight({{0, 0}, {20, 0}});

// Every waypoint-to-waypoint segment of the searched part keeps clear of the obstacles.
void check_searched_part_clear(const ActivePath& path, const ObstacleSet& obs, double inflation) {
  const auto pts = path.positions();
  for (std::size_t i = 0; i < path.split_index; ++i) {
    for (const Point& s : sample_segment(pts[i], pts[i + 1], 0.01)) {
      CHECK_FALSE(obs.any_within(s, inflation));
    }
  }
}

}  // namespace

TEST_CASE("path_blocked examples") {
  GraphConfig gcfg;
  gcfg.inflation_radius = 0.5;
  const ActivePath path = ActivePath::from_reference(kStraight);
  const Pose2D robot(0, 0, 0);
  CHECK_FALSE(path_blocked(path, ObstacleSet{}, gcfg, robot, 0.1));
  CHECK(path_blocked(path, ObstacleSet({{2, 0}}), gcfg, robot, 0.1));
  CHECK_FALSE(path_blocked(path, ObstacleSet({{8, 0}}), gcfg, robot, 0.1));
  // The window moves with the robot.
  CHECK(path_blocked(path, ObstacleSet({{8, 0}}), gcfg, Pose2D(4, 0, 0), 0.1));
}

TEST_CASE("clear reference is followed unchanged") {
  Planner planner(kStraight, GraphConfig{}, CostConfig{});
  const PlannerOutput out = planner.plan_step(Pose2D(0, 0, 0), ObstacleSet{});
  REQUIRE(kind_of(out) == OutputKind::FollowPath);
  const ActivePath& path = std::get<FollowPath>(out).path;
  REQUIRE(path.waypoints.size() == kStraight.vertices().size());
  for (std::size_t i = 0; i < path.waypoints.size(); ++i) {
    CHECK(path.waypoints[i].position().x == kStraight.vertices()[i].x);
    CHECK(path.waypoints[i].position().y == kStraight.vertices()[i].y);
  }
  CHECK_FALSE(path.cost.has_value());
  CHECK(planner.replan_count() == 0);
}

TEST_CASE("obstacle on the path triggers a detour that still ends at the goal") {
  const GraphConfig gcfg;
  Planner planner(kStraight, gcfg, CostConfig{});
  const ObstacleSet obs(sample_circle({3.0, 0.0}, 0.2, 0.05));
  const PlannerOutput out = planner.plan_step(Pose2D(0, 0, 0), obs);
  REQUIRE(kind_of(out) == OutputKind::FollowPath);
  CHECK(planner.replan_count() == 1);
  const ActivePath& path = std::get<FollowPath>(out).path;
  CHECK(path.cost.has_value());
  CHECK(path.waypoints.back().position().x == doctest::Approx(20.0));
  CHECK(path.waypoints.back().position().y == doctest::Approx(0.0));

  double max_offset = 0.0;
  for (const auto& w : path.waypoints) max_offset = std::max(max_offset, std::fabs(w.y()));
  CHECK(max_offset >= 0.5);

  // The junction lies on the reference.
  const Point junction = path.waypoints[path.split_index].position();
  CHECK(std::fabs(project_onto_path(junction, kStraight).lateral_offset) < gcfg.lateral_step / 2.0);
  check_searched_part_clear(path, obs, gcfg.inflation_radius);

  // Nothing changed, so the next tick keeps the same path.
  const PlannerOutput next = planner.plan_step(path.waypoints[1], obs);
  CHECK(kind_of(next) == OutputKind::FollowPath);
  CHECK(std::get<FollowPath>(next).path.revision == path.revision);
}

TEST_CASE("blocked corridor holds and resumes once it clears") {
  Planner planner(kStraight, GraphConfig{}, CostConfig{});
  const ObstacleSet wall(sample_polyline(std::vector<Point>{{1.5, -3.0}, {1.5, 3.0}}, 0.05));
  const Pose2D robot(0, 0, 0);
  const PlannerOutput held = planner.plan_step(robot, wall);
  REQUIRE(kind_of(held) == OutputKind::HoldPosition);
  CHECK(std::get<HoldPosition>(held).state == robot);
  CHECK(planner.holding());
  CHECK(kind_of(planner.plan_step(robot, wall)) == OutputKind::HoldPosition);

  const PlannerOutput resumed = planner.plan_step(robot, ObstacleSet{});
  CHECK(kind_of(resumed) == OutputKind::FollowPath);
  CHECK_FALSE(planner.holding());
}

TEST_CASE("failed replan keeps following while the path ahead is clear") {
  const GraphConfig gcfg;
  Planner planner(kStraight, gcfg, CostConfig{});
  // Wall far ahead, beyond the hold distance but inside the sensor window.
  const ObstacleSet wall(sample_polyline(std::vector<Point>{{4.5, -3.0}, {4.5, 3.0}}, 0.05));
  CHECK(kind_of(planner.plan_step(Pose2D(0, 0, 0), wall)) == OutputKind::FollowPath);
  CHECK(planner.replan_count() == 1);
  CHECK_FALSE(planner.last_replan()->success);
  CHECK(kind_of(planner.plan_step(Pose2D(3.0, 0, 0), wall)) == OutputKind::HoldPosition);
}

TEST_CASE("goal and collision handling") {
  Planner planner(kStraight, GraphConfig{}, CostConfig{});
  CHECK(kind_of(planner.plan_step(Pose2D(19.8, 0.1, 0), ObstacleSet{})) == OutputKind::GoalReached);
  CHECK_THROWS_AS(planner.plan_step(Pose2D(5, 0, 0), ObstacleSet({{5.1, 0}})), CollisionError);
}

TEST_CASE("risk increase trigger") {
  const ObstacleSet near({{3.0, 0.45}});
  for (const bool enabled : {true, false}) {
    PlannerConfig pcfg;
    pcfg.risk_trigger = enabled;
    Planner planner(kStraight, GraphConfig{}, CostConfig{}, pcfg);
    planner.plan_step(Pose2D(0, 0, 0), ObstacleSet{});
    CHECK(planner.replan_count() == 0);
    CHECK_FALSE(path_blocked(planner.current(), near, GraphConfig{}, Pose2D(0, 0, 0), 0.1));
    planner.plan_step(Pose2D(0.1, 0, 0), near);
    CHECK(planner.replan_count() == (enabled ? 1u : 0u));
  }
}

TEST_CASE("robot pushed off the path triggers a replan") {
  Planner planner(kStraight, GraphConfig{}, CostConfig{});
  planner.plan_step(Pose2D(0, 0, 0), ObstacleSet{});
  CHECK(planner.replan_count() == 0);
  const PlannerOutput out = planner.plan_step(Pose2D(1.0, 0.6, 0), ObstacleSet{});
  CHECK(planner.replan_count() == 1);
  REQUIRE(kind_of(out) == OutputKind::FollowPath);
  CHECK(std::get<FollowPath>(out).path.waypoints.front().y() == doctest::Approx(0.6));
}

TEST_CASE("progress along the reference never moves backwards") {
  const ReferencePath hairpin({{0, 0}, {6, 0}, {6, 1.5}, {0, 1.5}});
  Planner planner(hairpin, GraphConfig{}, CostConfig{});
  planner.plan_step(Pose2D(5.5, 0, 0), ObstacleSet{});
  const double p = planner.progress();
  CHECK(p == doctest::Approx(5.5));
  planner.plan_step(Pose2D(5.0, 0.1, 0), ObstacleSet{});
  CHECK(planner.progress() >= p);
}

TEST_CASE("naive and heap planners emit the same path") {
  const ObstacleSet obs(sample_circle({3.0, 0.1}, 0.25, 0.05));
  PlannerConfig naive;
  naive.search = SearchAlgorithm::Naive;
  Planner a(kStraight, GraphConfig{}, CostConfig{}, naive);
  Planner b(kStraight, GraphConfig{}, CostConfig{});
  const auto pa = std::get<FollowPath>(a.plan_step(Pose2D(0, 0, 0), obs)).path;
  const auto pb = std::get<FollowPath>(b.plan_step(Pose2D(0, 0, 0), obs)).path;
  CHECK(*pa.cost == *pb.cost);
}
