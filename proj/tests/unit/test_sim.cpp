#include <doctest.h>

#include <cmath>

#include "lexplan/cli.hpp"
#include "lexplan/report.hpp"
#include "lexplan/sim.hpp"

using namespace lexplan;

namespace {

Scenario straight(double length, int max_ticks) {
  const ReferencePath ref({{0, 0}, {length, 0}});
  Scenario sc{.name = "straight", .reference_path = ref, .robot_start = Pose2D(0, 0, 0)};
  sc.sim.max_ticks = max_ticks;
  return sc;
}

Scenario bundled(const std::string& name) { return load_scenario(ScenarioArgs{name, std::nullopt, {}}); }

}  // namespace

TEST_CASE("sensor range and memory") {
  SensorMemory sensor;
  const std::vector<Point> world{{3, 0}, {7, 0}};
  const ObstacleSet seen = sensor.sense(world, {0, 0}, 5.0);
  CHECK(seen.size() == 1);
  CHECK(seen.points()[0].x == 3.0);

  // Drive past the far point, then come back: it is remembered out of range.
  sensor.sense(world, {6, 0}, 5.0);
  const ObstacleSet back = sensor.sense(world, {0, 0}, 5.0);
  CHECK(back.size() == 2);

  // A point that moves while in range is forgotten at its old position.
  SensorMemory watcher;
  watcher.sense(std::vector<Point>{{2, 0}}, {0, 0}, 5.0);
  const ObstacleSet after = watcher.sense(std::vector<Point>{{2, 9}}, {0, 0}, 5.0);
  CHECK(after.empty());
}

TEST_CASE("cluster motion interpolates keyframes") {
  ObstacleCluster c{{{0, 0}}, {{1.0, {0, 0}}, {3.0, {2, 4}}}};
  CHECK(c.offset_at(0.0).x == 0.0);
  CHECK(c.offset_at(2.0).x == doctest::Approx(1.0));
  CHECK(c.offset_at(2.0).y == doctest::Approx(2.0));
  CHECK(c.offset_at(10.0).y == 4.0);
  CHECK(ObstacleCluster{{{1, 1}}, {}}.offset_at(5.0).x == 0.0);
}

TEST_CASE("random waypoint motion is seeded and bounded") {
  const auto a = random_waypoint_motion(5, {-1, -2}, {1, 2}, 0.3, 30.0, 1.0);
  const auto b = random_waypoint_motion(5, {-1, -2}, {1, 2}, 0.3, 30.0, 1.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].t == b[i].t);
    CHECK(a[i].offset.x == b[i].offset.x);
    CHECK(std::fabs(a[i].offset.x) <= 1.0);
    CHECK(std::fabs(a[i].offset.y) <= 2.0);
  }
  CHECK(a.back().t >= 30.0);
  CHECK(random_waypoint_motion(6, {-1, -2}, {1, 2}, 0.3, 30.0, 1.0)[1].offset.x != a[1].offset.x);
}

TEST_CASE("empty world: constant speed along the reference") {
  const Scenario sc = straight(10.0, 20);
  Simulation sim(sc);
  for (int i = 0; i < 10; ++i) sim.step();
  const auto& trace = sim.metrics().executed_path;
  REQUIRE(trace.size() == 11);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    CHECK(distance(trace[i - 1].position(), trace[i].position()) ==
          doctest::Approx(sc.sim.robot_speed * sc.sim.tick_dt));
    CHECK(trace[i].y() == 0.0);
  }
}

TEST_CASE("timeout ends cleanly") {
  const RunMetrics m = run_scenario(straight(10.0, 5));
  CHECK_FALSE(m.goal_reached);
  CHECK(m.ticks_elapsed == 5);
  CHECK(m.executed_path.size() == 6);
  CHECK(m.failure.empty());
}

TEST_CASE("impassable wall: the robot stops in front of it") {
  Scenario sc = straight(10.0, 120);
  sc.obstacles.push_back({sample_polyline(std::vector<Point>{{5, -3}, {5, 3}}, 0.1), {}});
  const RunMetrics m = run_scenario(sc);
  CHECK_FALSE(m.goal_reached);
  CHECK_FALSE(m.collided);
  CHECK(m.hold_intervals >= 1);
  CHECK(m.executed_path.back().x() < 5.0 - sc.graph_config.inflation_radius);
}

TEST_CASE("robot start inside an obstacle is rejected") {
  Scenario sc = straight(10.0, 10);
  sc.obstacles.push_back({{{0.1, 0.0}}, {}});
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
}

TEST_CASE("bundled U-shape: goal with a fixed number of replans") {
  const RunMetrics m = run_scenario(bundled("fig4_ushape_static"));
  CHECK(m.goal_reached);
  CHECK_FALSE(m.collided);
  CHECK(m.replan_count == 8);
}

TEST_CASE("bundled pool: waits for the blockage to clear") {
  const Scenario sc = bundled("fig8_pool_dynamic");
  const RunMetrics m = run_scenario(sc);
  CHECK(m.goal_reached);
  CHECK(m.hold_intervals >= 1);
  CHECK_FALSE(m.collided);
  CHECK(m.min_clearance >= sc.graph_config.inflation_radius);
}

TEST_CASE("pool walls are sensed as obstacles") {
  Simulation sim(bundled("fig8_pool_dynamic"));
  sim.step();
  bool wall = false;
  for (const Point& p : sim.sensed().points()) wall = wall || p.y == 0.0 || p.x == 12.5;
  CHECK(wall);
}

TEST_CASE("every replan path joins the reference and clears known obstacles") {
  for (const char* name : {"fig3_straight_blocked", "fig4_ushape_static"}) {
    const Scenario sc = bundled(name);
    Simulation sim(sc);
    int checked = 0;
    while (sim.step()) {
      const auto& rec = sim.planner().last_replan();
      if (!rec || !rec->success) continue;
      const ActivePath& path = sim.planner().current();
      const Point junction = path.waypoints[path.split_index].position();
      CHECK(std::fabs(project_onto_path(junction, sc.reference_path).lateral_offset) <
            sc.graph_config.lateral_step / 2.0);
      const auto pts = path.positions();
      for (std::size_t i = 0; i < path.split_index; ++i) {
        for (const Point& s : sample_segment(pts[i], pts[i + 1], sc.cost_config.integration_step)) {
          CHECK_FALSE(sim.sensed().any_within(s, sc.graph_config.inflation_radius));
        }
      }
      CHECK(distance(path.waypoints.back().position(), sc.reference_path.back()) < 1e-9);
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("runs are deterministic") {
  const Scenario sc = bundled("fig3_straight_blocked");
  const RunMetrics a = run_scenario(sc);
  const RunMetrics b = run_scenario(sc);
  CHECK(metrics_to_json(sc, a).dump() == metrics_to_json(sc, b).dump());
  CHECK(trace_csv(a) == trace_csv(b));
}

TEST_CASE("batch runner matches serial runs") {
  std::vector<Scenario> batch;
  for (std::uint64_t s = 0; s < 4; ++s) batch.push_back(make_random_scenario(s));
  const auto parallel = run_scenarios(batch, 3);
  REQUIRE(parallel.size() == batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    CHECK(trace_csv(parallel[i]) == trace_csv(run_scenario(batch[i])));
  }
}

TEST_CASE("random scenarios are reproducible from the seed") {
  const Scenario a = make_random_scenario(12);
  const Scenario b = make_random_scenario(12);
  CHECK(a.reference_path.length() == b.reference_path.length());
  CHECK(a.obstacle_points_at(0).size() == b.obstacle_points_at(0).size());
  CHECK(make_random_scenario(13).reference_path.length() != a.reference_path.length());
}
