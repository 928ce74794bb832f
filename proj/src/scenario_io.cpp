#include "lexplan/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace lexplan {

using nlohmann::json;

ScenarioParseError::ScenarioParseError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

std::string_view to_string(Connectivity c) { return c == Connectivity::Full8 ? "full8" : "forward5"; }

std::string_view to_string(SearchAlgorithm s) { return s == SearchAlgorithm::Naive ? "naive" : "heap"; }

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double as_number(const json& v, const std::string& path) {
  if (v.is_string() && (v == "inf" || v == "infinity")) {
    return std::numeric_limits<double>::infinity();
  }
  if (!v.is_number()) {
    throw ScenarioParseError(path, "expected a number");
  }
  return v.get<double>();
}

Point as_point(const json& v, const std::string& path) {
  if (v.is_array() && v.size() == 2) {
    return {as_number(v[0], index(path, 0)), as_number(v[1], index(path, 1))};
  }
  if (v.is_object() && v.contains("x") && v.contains("y") && v.size() == 2) {
    return {as_number(v["x"], join(path, "x")), as_number(v["y"], join(path, "y"))};
  }
  throw ScenarioParseError(path, "expected a point [x, y]");
}

std::vector<Point> as_points(const json& v, const std::string& path) {
  if (!v.is_array()) {
    throw ScenarioParseError(path, "expected a list of points");
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_point(v[i], index(path, i)));
  }
  return out;
}

// Field reader over one JSON object; finish() rejects keys nobody asked for.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw ScenarioParseError(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  const std::string& path() const { return path_; }
  std::string at(std::string_view key) const { return join(path_, key); }

  const json* get(std::string_view key) {
    const std::string k(key);
    used_.insert(k);
    const auto it = obj_.find(k);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& require(std::string_view key) {
    const json* v = get(key);
    if (!v) {
      throw ScenarioParseError(at(key), "missing required field");
    }
    return *v;
  }

  double number(std::string_view key, double fallback) {
    const json* v = get(key);
    return v ? as_number(*v, at(key)) : fallback;
  }

  double positive(std::string_view key, double fallback) {
    const double v = number(key, fallback);
    if (!(v > 0.0)) {
      throw ScenarioParseError(at(key), "must be positive");
    }
    return v;
  }

  double angle(std::string_view key, double fallback) {
    const json* rad = get(key);
    const std::string deg_key = std::string(key) + "_deg";
    const json* deg = get(deg_key);
    if (rad && deg) {
      throw ScenarioParseError(at(key), "given both in radians and in degrees");
    }
    if (deg) {
      return deg_to_rad(as_number(*deg, at(deg_key)));
    }
    return rad ? as_number(*rad, at(key)) : fallback;
  }

  bool boolean(std::string_view key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ScenarioParseError(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(std::string_view key, std::string fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ScenarioParseError(at(key), "expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) {
        throw ScenarioParseError(at(it.key()), "unknown field");
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

GraphConfig parse_graph_config(const json& v, const std::string& path) {
  Fields f(v, path);
  GraphConfig g;
  g.d_span = f.positive("d_span", g.d_span);
  g.d_roll = f.positive("d_roll", g.d_roll);
  g.d_sensor = f.positive("d_sensor", g.d_sensor);
  g.station_step = f.positive("station_step", g.station_step);
  g.lateral_step = f.positive("lateral_step", g.lateral_step);
  g.rollout_length = f.positive("rollout_length", g.rollout_length);
  g.rollin_length = f.positive("rollin_length", g.rollin_length);
  g.inflation_radius = f.number("inflation_radius", g.inflation_radius);
  g.max_heading_change = f.angle("max_heading_change", g.max_heading_change);
  const std::string conn = f.string("connectivity", "forward5");
  if (conn == "forward5") {
    g.connectivity = Connectivity::Forward5;
  } else if (conn == "full8") {
    g.connectivity = Connectivity::Full8;
  } else {
    throw ScenarioParseError(f.at("connectivity"), "expected \"forward5\" or \"full8\"");
  }
  f.finish();
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError(path, e.what());
  }
  return g;
}

CostConfig parse_cost_config(const json& v, const std::string& path) {
  Fields f(v, path);
  CostConfig c;
  c.th_risk = f.number("th_risk", c.th_risk);
  c.th_head = f.angle("th_head", c.th_head);
  c.integration_step = f.positive("integration_step", c.integration_step);
  c.tie_epsilon = f.number("tie_epsilon", c.tie_epsilon);
  f.finish();
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError(path, e.what());
  }
  return c;
}

PlannerConfig parse_planner_config(const json& v, const std::string& path) {
  Fields f(v, path);
  PlannerConfig p;
  if (const json* h = f.get("hierarchy")) {
    try {
      if (h->is_string()) {
        p.hierarchy = parse_hierarchy(h->get<std::string>());
      } else if (h->is_array()) {
        p.hierarchy.clear();
        for (const json& item : *h) {
          if (!item.is_string()) throw std::invalid_argument("criteria must be strings");
          p.hierarchy.push_back(parse_cost_kind(item.get<std::string>()));
        }
      } else {
        throw std::invalid_argument("expected a list of criteria");
      }
    } catch (const std::invalid_argument& e) {
      throw ScenarioParseError(f.at("hierarchy"), e.what());
    }
  }
  p.goal_tolerance = f.positive("goal_tolerance", p.goal_tolerance);
  p.risk_trigger = f.boolean("risk_trigger", p.risk_trigger);
  p.risk_increase_fraction = f.number("risk_increase_fraction", p.risk_increase_fraction);
  p.hold_distance = f.positive("hold_distance", p.hold_distance);
  const std::string search = f.string("search", "heap");
  if (search == "heap") {
    p.search = SearchAlgorithm::Heap;
  } else if (search == "naive") {
    p.search = SearchAlgorithm::Naive;
  } else {
    throw ScenarioParseError(f.at("search"), "expected \"heap\" or \"naive\"");
  }
  f.finish();
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError(path, e.what());
  }
  return p;
}

SimSettings parse_sim(const json& v, const std::string& path) {
  Fields f(v, path);
  SimSettings s;
  s.tick_dt = f.positive("tick_dt", s.tick_dt);
  s.robot_speed = f.positive("robot_speed", s.robot_speed);
  if (const json* t = f.get("max_ticks")) {
    if (!t->is_number_integer() || t->get<long long>() <= 0) {
      throw ScenarioParseError(f.at("max_ticks"), "expected a positive integer");
    }
    s.max_ticks = t->get<int>();
  }
  if (const json* seed = f.get("seed")) {
    if (!seed->is_number_integer() || seed->get<long long>() < 0) {
      throw ScenarioParseError(f.at("seed"), "expected a non-negative integer");
    }
    s.seed = seed->get<std::uint64_t>();
  }
  f.finish();
  return s;
}

Pose2D parse_pose(const json& v, const std::string& path) {
  if (v.is_array() && v.size() == 3) {
    return Pose2D(as_number(v[0], index(path, 0)), as_number(v[1], index(path, 1)),
                  as_number(v[2], index(path, 2)));
  }
  Fields f(v, path);
  const double x = as_number(f.require("x"), f.at("x"));
  const double y = as_number(f.require("y"), f.at("y"));
  const double heading = f.angle("heading", 0.0);
  f.finish();
  return Pose2D(x, y, heading);
}

std::vector<MotionKeyframe> parse_motion(const json& v, const std::string& path, std::uint64_t default_seed) {
  if (v.is_array()) {
    std::vector<MotionKeyframe> keys;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Fields f(v[i], index(path, i));
      MotionKeyframe k;
      k.t = as_number(f.require("t"), f.at("t"));
      k.offset = {f.number("dx", 0.0), f.number("dy", 0.0)};
      f.finish();
      if (!keys.empty() && k.t < keys.back().t) {
        throw ScenarioParseError(f.at("t"), "keyframes must be sorted by time");
      }
      keys.push_back(k);
    }
    return keys;
  }
  Fields outer(v, path);
  const json& rw = outer.require("random_waypoints");
  outer.finish();
  Fields f(rw, outer.at("random_waypoints"));
  std::uint64_t seed = default_seed;
  if (const json* s = f.get("seed")) {
    if (!s->is_number_integer()) throw ScenarioParseError(f.at("seed"), "expected an integer");
    seed = s->get<std::uint64_t>();
  }
  const Point lo = as_point(f.require("offset_min"), f.at("offset_min"));
  const Point hi = as_point(f.require("offset_max"), f.at("offset_max"));
  const double speed = f.positive("speed", 0.1);
  const double duration = f.positive("duration", 60.0);
  const double pause = f.number("pause", 0.0);
  f.finish();
  try {
    return random_waypoint_motion(seed, lo, hi, speed, duration, pause);
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError(f.path(), e.what());
  }
}

ObstacleCluster parse_cluster(const json& v, const std::string& path, std::uint64_t seed) {
  Fields f(v, path);
  const double spacing = f.positive("spacing", 0.1);
  ObstacleCluster c;
  int shapes = 0;
  if (const json* pts = f.get("points")) {
    c.points = as_points(*pts, f.at("points"));
    ++shapes;
  }
  if (const json* line = f.get("polyline")) {
    const auto verts = as_points(*line, f.at("polyline"));
    if (verts.empty()) throw ScenarioParseError(f.at("polyline"), "needs at least one vertex");
    c.points = sample_polyline(verts, spacing);
    ++shapes;
  }
  if (const json* circle = f.get("circle")) {
    Fields cf(*circle, f.at("circle"));
    const Point center = as_point(cf.require("center"), cf.at("center"));
    const double radius = as_number(cf.require("radius"), cf.at("radius"));
    cf.finish();
    c.points = sample_circle(center, radius, spacing);
    ++shapes;
  }
  if (const json* rect = f.get("rectangle")) {
    Fields rf(*rect, f.at("rectangle"));
    const Point center = as_point(rf.require("center"), rf.at("center"));
    const double w = as_number(rf.require("width"), rf.at("width"));
    const double h = as_number(rf.require("height"), rf.at("height"));
    rf.finish();
    c.points = sample_rectangle(center, w, h, spacing);
    ++shapes;
  }
  if (shapes != 1) {
    throw ScenarioParseError(path, "needs exactly one of points, polyline, circle, rectangle");
  }
  if (const json* m = f.get("motion")) {
    c.motion = parse_motion(*m, f.at("motion"), seed);
  }
  f.finish();
  return c;
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  Fields f(doc, "");
  if (const json* ver = f.get("schema_version")) {
    if (!ver->is_number_integer() || ver->get<int>() != kScenarioSchemaVersion) {
      throw ScenarioParseError("schema_version", "unsupported version");
    }
  }
  const std::string name = f.string("name", "scenario");
  const auto verts = as_points(f.require("reference_path"), "reference_path");
  std::optional<ReferencePath> ref;
  try {
    ref.emplace(verts);
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError("reference_path", e.what());
  }

  const json* start = f.get("robot_start");
  Scenario sc{.name = name,
              .reference_path = *ref,
              .robot_start = start ? parse_pose(*start, "robot_start")
                                   : Pose2D(ref->front(), ref->segment_headings().front())};
  if (const json* s = f.get("sim")) sc.sim = parse_sim(*s, "sim");
  if (const json* g = f.get("graph_config")) sc.graph_config = parse_graph_config(*g, "graph_config");
  if (const json* c = f.get("cost_config")) sc.cost_config = parse_cost_config(*c, "cost_config");
  if (const json* p = f.get("planner_config")) sc.planner_config = parse_planner_config(*p, "planner_config");
  if (const json* obs = f.get("obstacles")) {
    if (!obs->is_array()) throw ScenarioParseError("obstacles", "expected a list");
    for (std::size_t i = 0; i < obs->size(); ++i) {
      // Each cluster gets its own stream derived from the scenario seed.
      const std::uint64_t seed = SplitMix64(sc.sim.seed + 0x1000 * (i + 1)).next();
      sc.obstacles.push_back(parse_cluster((*obs)[i], index("obstacles", i), seed));
    }
  }
  f.finish();
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioParseError("<scenario>", e.what());
  }
  return sc;
}

namespace {

json number_or_inf(double v) { return std::isinf(v) ? json("inf") : json(v); }

}  // namespace

json scenario_to_json(const Scenario& sc) {
  json doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["name"] = sc.name;
  doc["reference_path"] = json::array();
  for (const Point& p : sc.reference_path.vertices()) {
    doc["reference_path"].push_back({p.x, p.y});
  }
  doc["robot_start"] = {{"x", sc.robot_start.x()}, {"y", sc.robot_start.y()}, {"heading", sc.robot_start.heading()}};
  doc["obstacles"] = json::array();
  for (const ObstacleCluster& c : sc.obstacles) {
    json cj;
    cj["points"] = json::array();
    for (const Point& p : c.points) cj["points"].push_back({p.x, p.y});
    if (!c.motion.empty()) {
      cj["motion"] = json::array();
      for (const MotionKeyframe& k : c.motion) {
        cj["motion"].push_back({{"t", k.t}, {"dx", k.offset.x}, {"dy", k.offset.y}});
      }
    }
    doc["obstacles"].push_back(std::move(cj));
  }
  const GraphConfig& g = sc.graph_config;
  doc["graph_config"] = {{"d_span", g.d_span},
                         {"d_roll", g.d_roll},
                         {"d_sensor", g.d_sensor},
                         {"station_step", g.station_step},
                         {"lateral_step", g.lateral_step},
                         {"rollout_length", g.rollout_length},
                         {"rollin_length", g.rollin_length},
                         {"inflation_radius", g.inflation_radius},
                         {"connectivity", to_string(g.connectivity)},
                         {"max_heading_change", g.max_heading_change}};
  const CostConfig& c = sc.cost_config;
  doc["cost_config"] = {{"th_risk", number_or_inf(c.th_risk)},
                        {"th_head", c.th_head},
                        {"integration_step", c.integration_step},
                        {"tie_epsilon", c.tie_epsilon}};
  const PlannerConfig& p = sc.planner_config;
  json hierarchy = json::array();
  for (const CostKind k : p.hierarchy) hierarchy.push_back(to_string(k));
  doc["planner_config"] = {{"hierarchy", hierarchy},
                           {"goal_tolerance", p.goal_tolerance},
                           {"risk_trigger", p.risk_trigger},
                           {"risk_increase_fraction", p.risk_increase_fraction},
                           {"hold_distance", p.hold_distance},
                           {"search", to_string(p.search)}};
  doc["sim"] = {{"tick_dt", sc.sim.tick_dt},
                {"robot_speed", sc.sim.robot_speed},
                {"max_ticks", sc.sim.max_ticks},
                {"seed", sc.sim.seed}};
  return doc;
}

void apply_override(json& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw std::invalid_argument("override must look like key.path=value: " + std::string(assignment));
  }
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) {
    value = text;
  }
  json* node = &doc;
  std::string_view rest = key;
  while (true) {
    const auto dot = rest.find('.');
    const std::string part(rest.substr(0, dot));
    if (part.empty()) {
      throw std::invalid_argument("override has an empty path component: " + key);
    }
    if (!node->is_object()) {
      throw std::invalid_argument("override path does not name an object: " + key);
    }
    if (dot == std::string_view::npos) {
      (*node)[part] = std::move(value);
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) {
      *node = json::object();
    }
    rest.remove_prefix(dot + 1);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError("<json>", std::string("invalid JSON in ") + path.string() + ": " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path, std::span<const std::string> overrides) {
  json doc = read_json_file(path);
  for (const std::string& o : overrides) {
    apply_override(doc, o);
  }
  return scenario_from_json(doc);
}

}  // namespace lexplan
