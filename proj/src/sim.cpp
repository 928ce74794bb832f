#include "lexplan/sim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace lexplan {

Point ObstacleCluster::offset_at(double t) const {
  if (motion.empty()) {
    return {};
  }
  if (t <= motion.front().t) {
    return motion.front().offset;
  }
  if (t >= motion.back().t) {
    return motion.back().offset;
  }
  const auto it = std::upper_bound(motion.begin(), motion.end(), t,
                                   [](double v, const MotionKeyframe& k) { return v < k.t; });
  const MotionKeyframe& b = *it;
  const MotionKeyframe& a = *(it - 1);
  const double span = b.t - a.t;
  const double u = span > 0.0 ? (t - a.t) / span : 1.0;
  return a.offset + u * (b.offset - a.offset);
}

std::vector<Point> Scenario::obstacle_points_at(double t) const {
  std::vector<Point> out;
  for (const ObstacleCluster& c : obstacles) {
    const Point off = c.offset_at(t);
    for (const Point& p : c.points) {
      out.push_back(p + off);
    }
  }
  return out;
}

void Scenario::validate() const {
  graph_config.validate();
  cost_config.validate();
  planner_config.validate();
  if (!(sim.tick_dt > 0.0)) {
    throw std::invalid_argument("sim.tick_dt must be positive");
  }
  if (!(sim.robot_speed > 0.0)) {
    throw std::invalid_argument("sim.robot_speed must be positive");
  }
  if (sim.max_ticks <= 0) {
    throw std::invalid_argument("sim.max_ticks must be positive");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const auto& motion = obstacles[i].motion;
    for (std::size_t k = 1; k < motion.size(); ++k) {
      if (!(motion[k].t >= motion[k - 1].t)) {
        throw std::invalid_argument("obstacles[" + std::to_string(i) + "].motion keyframes must be sorted by t");
      }
    }
  }
  const ObstacleSet initial(obstacle_points_at(0.0));
  if (initial.any_within(robot_start.position(), graph_config.inflation_radius)) {
    throw std::invalid_argument("robot_start lies inside an inflated obstacle");
  }
}

ObstacleSet SensorMemory::sense(std::span<const Point> world, Point robot, double range) {
  std::vector<Point> next;
  next.reserve(memory_.size() + world.size());
  for (const Point& m : memory_) {
    if (distance(m, robot) > range) {
      next.push_back(m);
    }
  }
  for (const Point& p : world) {
    if (distance(p, robot) <= range) {
      next.push_back(p);
    }
  }
  memory_ = std::move(next);
  return ObstacleSet(memory_);
}

Simulation::Simulation(Scenario scenario)
    : scenario_(std::move(scenario)),
      planner_(scenario_.reference_path, scenario_.graph_config, scenario_.cost_config,
               scenario_.planner_config),
      robot_(scenario_.robot_start) {
  scenario_.validate();
  metrics_.executed_path.push_back(robot_);
}

ObstacleSet Simulation::true_obstacles() const { return ObstacleSet(scenario_.obstacle_points_at(time())); }

std::optional<PlannerOutput> Simulation::step() {
  if (finished_) {
    return std::nullopt;
  }
  const double t = (tick_ + 1) * scenario_.sim.tick_dt;
  const std::vector<Point> world_points = scenario_.obstacle_points_at(t);
  const ObstacleSet world(world_points);
  sensed_ = sensor_.sense(world_points, robot_.position(), scenario_.graph_config.d_sensor);

  PlannerOutput out;
  try {
    out = planner_.plan_step(robot_, sensed_);
  } catch (const CollisionError& e) {
    metrics_.collided = true;
    metrics_.failure = e.what();
    metrics_.replan_count = planner_.replan_count();
    finished_ = true;
    return std::nullopt;
  }
  ++tick_;
  if (const auto& rec = planner_.last_replan()) {
    ReplanEvent ev{tick_, *rec, {}};
    if (rec->success) {
      const ActivePath& active = planner_.current();
      const auto pts = active.positions();
      ev.path.assign(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(active.split_index + 1));
    }
    metrics_.replans.push_back(std::move(ev));
  }

  const Pose2D before = robot_;
  const OutputKind kind = kind_of(out);
  switch (kind) {
    case OutputKind::FollowPath:
      advance_robot(std::get<FollowPath>(out).path);
      holding_ = false;
      break;
    case OutputKind::HoldPosition:
      if (!holding_) {
        ++metrics_.hold_intervals;
      }
      holding_ = true;
      ++metrics_.hold_ticks;
      break;
    case OutputKind::GoalReached:
      metrics_.goal_reached = true;
      finished_ = true;
      break;
  }
  record_motion(before, world);

  metrics_.outputs.push_back(kind);
  metrics_.executed_path.push_back(robot_);
  metrics_.ticks_elapsed = tick_;
  metrics_.replan_count = planner_.replan_count();
  if (tick_ >= scenario_.sim.max_ticks) {
    finished_ = true;
  }
  return out;
}

void Simulation::advance_robot(const ActivePath& path) {
  if (path.revision != followed_revision_) {
    followed_revision_ = path.revision;
    followed_ = path.polyline();
    followed_s_ = followed_ ? project_onto_path(robot_.position(), *followed_).arclength : 0.0;
  }
  if (!followed_) {
    return;
  }
  followed_s_ = std::min(followed_->length(), followed_s_ + scenario_.sim.robot_speed * scenario_.sim.tick_dt);
  robot_ = Pose2D(followed_->point_at(followed_s_), followed_->heading_at(followed_s_));
}

void Simulation::record_motion(const Pose2D& before, const ObstacleSet& world) {
  const CostConfig& ccfg = scenario_.cost_config;
  const double inflation = scenario_.graph_config.inflation_radius;
  for (const Point& p : sample_segment(before.position(), robot_.position(), ccfg.integration_step)) {
    const auto d = world.distance_to_nearest(p);
    if (!d) {
      break;
    }
    metrics_.min_clearance = std::min(metrics_.min_clearance, *d);
    if (*d < inflation && !metrics_.collided) {
      metrics_.collided = true;
      metrics_.failure = "robot trace entered an inflated obstacle at tick " + std::to_string(tick_);
    }
  }
  if (distance(before.position(), robot_.position()) > 0.0) {
    const std::array<Point, 2> seg{before.position(), robot_.position()};
    try {
      metrics_.accumulated_costs += edge_cost(seg, world, scenario_.reference_path, ccfg);
    } catch (const CollisionError& e) {
      metrics_.collided = true;
      metrics_.failure = e.what();
    }
  }
}

RunMetrics run_scenario(const Scenario& scenario) {
  Simulation sim(scenario);
  while (sim.step()) {
  }
  return sim.metrics();
}

std::vector<RunMetrics> run_scenarios(std::span<const Scenario> scenarios, unsigned workers) {
  std::vector<RunMetrics> results(scenarios.size());
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, scenarios.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(scenarios.size());
  const auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        results[i] = run_scenario(scenarios[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(work);
  }
  work();
  for (std::thread& t : pool) {
    t.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return results;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<Point> sample_polyline(std::span<const Point> vertices, double spacing) {
  std::vector<Point> out;
  if (vertices.size() == 1) {
    out.push_back(vertices.front());
  }
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    auto seg = sample_segment(vertices[i], vertices[i + 1], spacing);
    out.insert(out.end(), seg.begin() + (i == 0 ? 0 : 1), seg.end());
  }
  return out;
}

std::vector<Point> sample_circle(Point center, double radius, double spacing) {
  std::vector<Point> out{center};
  if (radius <= 0.0) {
    return out;
  }
  const auto n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(2.0 * kPi * radius / spacing)));
  for (std::size_t k = 0; k < n; ++k) {
    const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    out.push_back(center + radius * Point{std::cos(a), std::sin(a)});
  }
  return out;
}

std::vector<Point> sample_rectangle(Point center, double width, double height, double spacing) {
  const double hw = width / 2.0;
  const double hh = height / 2.0;
  const std::array<Point, 5> outline{center + Point{-hw, -hh}, center + Point{hw, -hh}, center + Point{hw, hh},
                                     center + Point{-hw, hh}, center + Point{-hw, -hh}};
  auto out = sample_polyline(outline, spacing);
  out.pop_back();  // closing vertex repeats the first
  return out;
}

std::vector<MotionKeyframe> random_waypoint_motion(std::uint64_t seed, Point offset_lo, Point offset_hi,
                                                   double speed, double duration, double pause) {
  if (!(speed > 0.0) || !(duration >= 0.0) || !(pause >= 0.0)) {
    throw std::invalid_argument("random waypoint motion needs positive speed and non-negative duration/pause");
  }
  SplitMix64 rng(seed);
  std::vector<MotionKeyframe> keys{{0.0, {}}};
  while (keys.back().t < duration) {
    const Point target{rng.uniform(offset_lo.x, offset_hi.x), rng.uniform(offset_lo.y, offset_hi.y)};
    const double travel = distance(keys.back().offset, target) / speed;
    keys.push_back({keys.back().t + travel, target});
    if (pause > 0.0) {
      keys.push_back({keys.back().t + pause, target});
    }
  }
  return keys;
}

Scenario make_random_scenario(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Point> verts{{0.0, 0.0}};
  double heading = 0.0;
  const double length = rng.uniform(14.0, 24.0);
  const double step = 0.5;
  for (double s = step; s <= length + 1e-9; s += step) {
    heading = std::clamp(heading + rng.uniform(-0.12, 0.12), -0.9, 0.9);
    verts.push_back(verts.back() + step * Point{std::cos(heading), std::sin(heading)});
  }
  ReferencePath ref(verts);

  Scenario sc{.name = "random_" + std::to_string(seed),
              .reference_path = ref,
              .robot_start = Pose2D(ref.front(), ref.segment_headings().front())};
  sc.sim.seed = seed;
  sc.sim.max_ticks = static_cast<int>(std::ceil(ref.length() / (sc.sim.robot_speed * sc.sim.tick_dt))) * 3;

  const int clusters = 3 + static_cast<int>(rng.next() % 6);
  for (int c = 0; c < clusters; ++c) {
    const double s = rng.uniform(3.0, ref.length() - 3.0);
    const double lateral = rng.uniform(-1.5, 1.5);
    const double radius = rng.uniform(0.1, 0.5);
    const Point center = ref.point_at(s) + lateral * ref.left_normal_at(s);
    sc.obstacles.push_back({sample_circle(center, radius, 0.1), {}});
  }
  return sc;
}

}  // namespace lexplan
