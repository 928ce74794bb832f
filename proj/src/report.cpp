#include "lexplan/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace lexplan {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); }

json cost_json(const CostVector& c) {
  json out = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(number(c[i]));
  return out;
}

json canonical_json(const CostVector& c) {
  return {{"risk", number(c[0])}, {"heading", number(c[1])}, {"distance", number(c[2])}};
}

std::string outcome_of(const RunMetrics& m) {
  if (m.goal_reached) return "goal";
  if (m.collided) return "collision";
  if (!m.failure.empty()) return "error";
  return "timeout";
}

double trace_length(const RunMetrics& m) {
  double total = 0.0;
  for (std::size_t i = 1; i < m.executed_path.size(); ++i) {
    total += distance(m.executed_path[i - 1].position(), m.executed_path[i].position());
  }
  return total;
}

// World-to-pixel mapping with y pointing up in the world.
class Canvas {
 public:
  Canvas(double min_x, double min_y, double max_x, double max_y, double max_px)
      : min_x_(min_x), max_y_(max_y) {
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-6});
    scale_ = max_px / span;
    width_ = (max_x - min_x) * scale_;
    height_ = (max_y - min_y) * scale_;
  }

  double px(double x) const { return (x - min_x_) * scale_; }
  double py(double y) const { return (max_y_ - y) * scale_; }
  double len(double d) const { return d * scale_; }

  std::string header() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(std::ceil(width_))
        << "\" height=\"" << format_number(std::ceil(height_)) << "\" viewBox=\"0 0 "
        << format_number(std::ceil(width_)) << ' ' << format_number(std::ceil(height_)) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out.str();
  }

  std::string polyline(std::span<const Point> pts, const std::string& style) const {
    std::ostringstream out;
    out << "<polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out << (i ? " " : "") << coord(pts[i].x, pts[i].y);
    }
    out << "\"/>\n";
    return out.str();
  }

  std::string circle(Point c, double r_px, const std::string& style) const {
    return "<circle cx=\"" + fixed(px(c.x)) + "\" cy=\"" + fixed(py(c.y)) + "\" r=\"" + fixed(r_px) + "\" " +
           style + "/>\n";
  }

 private:
  static std::string fixed(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
  }
  std::string coord(double x, double y) const { return fixed(px(x)) + "," + fixed(py(y)); }

  double min_x_;
  double max_y_;
  double scale_ = 1.0;
  double width_ = 0.0;
  double height_ = 0.0;
};

}  // namespace

json metrics_to_json(const Scenario& scenario, const RunMetrics& m, bool include_timing) {
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["scenario"] = scenario.name;
  out["seed"] = scenario.sim.seed;
  out["outcome"] = outcome_of(m);
  out["goal_reached"] = m.goal_reached;
  out["ticks_elapsed"] = m.ticks_elapsed;
  out["time_elapsed"] = m.ticks_elapsed * scenario.sim.tick_dt;
  out["replan_count"] = m.replan_count;
  out["hold_intervals"] = m.hold_intervals;
  out["hold_ticks"] = m.hold_ticks;
  out["collided"] = m.collided;
  out["failure"] = m.failure.empty() ? json(nullptr) : json(m.failure);
  out["min_clearance"] = number(m.min_clearance);
  out["trace_length"] = number(trace_length(m));
  out["accumulated_costs"] = canonical_json(m.accumulated_costs);
  out["hierarchy"] = to_string(scenario.planner_config.hierarchy);

  std::map<std::string, int> counts{{"follow", 0}, {"hold", 0}, {"goal", 0}};
  for (const OutputKind k : m.outputs) ++counts[std::string(to_string(k))];
  out["output_counts"] = counts;

  json replans = json::array();
  for (const ReplanEvent& ev : m.replans) {
    json r;
    r["tick"] = ev.tick;
    r["x"] = number(ev.record.robot.x());
    r["y"] = number(ev.record.robot.y());
    r["progress"] = number(ev.record.progress);
    r["node_count"] = ev.record.node_count;
    r["edge_count"] = ev.record.edge_count;
    r["success"] = ev.record.success;
    r["path_cost"] = ev.record.path_cost ? cost_json(*ev.record.path_cost) : json(nullptr);
    if (include_timing) {
      r["construction_seconds"] = ev.record.construction_seconds;
      r["search_seconds"] = ev.record.search_seconds;
    }
    replans.push_back(std::move(r));
  }
  out["replans"] = std::move(replans);
  return out;
}

std::string trace_csv(const RunMetrics& m) {
  std::ostringstream out;
  out << "# schema_version=" << kReportSchemaVersion << "\n";
  out << "tick,x,y,heading,output\n";
  for (std::size_t i = 0; i < m.executed_path.size(); ++i) {
    const Pose2D& p = m.executed_path[i];
    const std::string_view kind = i == 0 ? "start" : to_string(m.outputs[i - 1]);
    out << i << ',' << format_number(p.x()) << ',' << format_number(p.y()) << ',' << format_number(p.heading())
        << ',' << kind << '\n';
  }
  return out.str();
}

std::string run_svg(const Scenario& scenario, const RunMetrics& m) {
  const double end_time = m.ticks_elapsed * scenario.sim.tick_dt;
  std::vector<double> times{0.0};
  bool moving = false;
  for (const ObstacleCluster& c : scenario.obstacles) moving = moving || !c.motion.empty();
  if (moving) {
    const int samples = 8;
    for (int k = 1; k <= samples; ++k) times.push_back(end_time * k / samples);
  }

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  const auto grow = [&](Point p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  };
  for (const Point& p : scenario.reference_path.vertices()) grow(p);
  for (const Pose2D& p : m.executed_path) grow(p.position());
  for (const double t : times) {
    for (const Point& p : scenario.obstacle_points_at(t)) grow(p);
  }
  const double margin = 1.0;
  const Canvas canvas(min_x - margin, min_y - margin, max_x + margin, max_y + margin, 1000.0);

  std::string svg = canvas.header();
  const double r_inflated = canvas.len(scenario.graph_config.inflation_radius);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double opacity = 0.15 + 0.6 * static_cast<double>(k + 1) / static_cast<double>(times.size());
    const std::string a = format_number(std::round(opacity * 100.0) / 100.0);
    for (const ObstacleCluster& c : scenario.obstacles) {
      if (k > 0 && c.motion.empty()) continue;
      const Point off = c.offset_at(times[k]);
      for (const Point& p : c.points) {
        svg += canvas.circle(p + off, r_inflated, "fill=\"#f4b6b6\" fill-opacity=\"" + a + "\" stroke=\"none\"");
      }
      for (const Point& p : c.points) {
        svg += canvas.circle(p + off, 1.5, "fill=\"#a01010\" fill-opacity=\"" + a + "\"");
      }
    }
  }
  svg += canvas.polyline(scenario.reference_path.vertices(),
                         "stroke=\"#888888\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");
  for (const ReplanEvent& ev : m.replans) {
    if (ev.path.size() >= 2) {
      svg += canvas.polyline(ev.path, "stroke=\"#e08a00\" stroke-width=\"1.2\" stroke-opacity=\"0.7\"");
    }
  }
  std::vector<Point> trace;
  for (const Pose2D& p : m.executed_path) trace.push_back(p.position());
  svg += canvas.polyline(trace, "stroke=\"#1f5fbf\" stroke-width=\"2.5\"");
  svg += canvas.circle(scenario.robot_start.position(), 5.0, "fill=\"#1f5fbf\"");
  svg += canvas.circle(scenario.reference_path.back(), 5.0, "fill=\"#2a9d2a\"");
  svg += "</svg>\n";
  return svg;
}

json study_to_json(const Scenario& scenario, const CriteriaStudy& study) {
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["scenario"] = scenario.name;
  out["tick"] = study.tick;
  out["robot"] = {number(study.robot.x()), number(study.robot.y()), number(study.robot.heading())};
  out["node_count"] = study.node_count;
  json rows = json::array();
  for (const CriteriaStudyRow& row : study.rows) {
    json r;
    r["hierarchy"] = to_string(row.hierarchy);
    r["found"] = row.found;
    r["costs"] = canonical_json(row.canonical_cost);
    json path = json::array();
    for (const Point& p : row.path) path.push_back({number(p.x), number(p.y)});
    r["path"] = std::move(path);
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  return out;
}

std::string study_table(const CriteriaStudy& study) {
  std::ostringstream out;
  out << "hierarchy,found,risk,heading,distance\n";
  for (const CriteriaStudyRow& row : study.rows) {
    out << '"' << to_string(row.hierarchy) << "\"," << (row.found ? "yes" : "no") << ','
        << format_number(row.canonical_cost[0]) << ',' << format_number(row.canonical_cost[1]) << ','
        << format_number(row.canonical_cost[2]) << '\n';
  }
  return out.str();
}

std::string bench_csv(std::span<const BenchmarkRecord> records) {
  std::ostringstream out;
  out << "# schema_version=" << kReportSchemaVersion << "\n";
  out << "density,node_count,edge_count,k,construction_seconds,search_naive_seconds,search_heap_seconds,"
         "repetitions\n";
  for (const BenchmarkRecord& r : records) {
    out << format_number(r.density) << ',' << r.node_count << ',' << r.edge_count << ',' << r.k << ','
        << format_number(r.construction_seconds) << ',' << format_number(r.search_naive_seconds) << ','
        << format_number(r.search_heap_seconds) << ',' << r.repetitions << '\n';
  }
  return out.str();
}

std::string bench_svg(std::span<const BenchmarkRecord> records) {
  struct Series {
    std::string label;
    std::string color;
    std::vector<Point> pts;
  };
  std::vector<Series> series;
  const auto series_for = [&](const std::string& label, const std::string& color) -> Series& {
    for (Series& s : series) {
      if (s.label == label) return s;
    }
    series.push_back({label, color, {}});
    return series.back();
  };
  const std::array<const char*, 3> naive_colors{"#f4a582", "#d6604d", "#b2182b"};
  const std::array<const char*, 3> heap_colors{"#92c5de", "#4393c3", "#2166ac"};
  double max_n = 1.0;
  double max_t = 1e-6;
  for (const BenchmarkRecord& r : records) {
    const double n = static_cast<double>(r.node_count);
    const auto k = static_cast<std::size_t>(std::clamp(r.k, 1, 3) - 1);
    series_for("construction", "#333333").pts.push_back({n, r.construction_seconds});
    series_for("naive K=" + std::to_string(r.k), naive_colors[k]).pts.push_back({n, r.search_naive_seconds});
    series_for("heap K=" + std::to_string(r.k), heap_colors[k]).pts.push_back({n, r.search_heap_seconds});
    max_n = std::max(max_n, n);
    max_t = std::max({max_t, r.construction_seconds, r.search_naive_seconds, r.search_heap_seconds});
  }

  const double w = 720.0;
  const double h = 480.0;
  const double left = 70.0;
  const double bottom = 50.0;
  const double pw = w - left - 180.0;
  const double ph = h - bottom - 30.0;
  const auto X = [&](double n) { return left + pw * n / max_n; };
  const auto Y = [&](double t) { return 30.0 + ph * (1.0 - t / max_t); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << Y(0) << "\" x2=\"" << left + pw << "\" y2=\"" << Y(0)
      << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << Y(0) << "\" x2=\"" << left << "\" y2=\"" << Y(max_t)
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double n = max_n * i / 4.0;
    const double t = max_t * i / 4.0;
    out << "<text x=\"" << X(n) << "\" y=\"" << Y(0) + 18 << "\" font-size=\"11\" text-anchor=\"middle\">"
        << static_cast<long>(std::lround(n)) << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << Y(t) + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
        << format_number(std::round(t * 1e4) / 1e4) << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">nodes</text>\n"
      << "<text x=\"16\" y=\"" << 30 + ph / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << 30 + ph / 2
      << ")\" text-anchor=\"middle\">seconds</text>\n";
  double legend_y = 40.0;
  for (Series& s : series) {
    std::sort(s.pts.begin(), s.pts.end(), [](Point a, Point b) { return a.x < b.x; });
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
    for (const Point& p : s.pts) out << X(p.x) << ',' << Y(p.y) << ' ';
    out << "\"/>\n";
    out << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << legend_y << "\" x2=\"" << left + pw + 35 << "\" y2=\""
        << legend_y << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << left + pw + 40 << "\" y=\"" << legend_y + 4 << "\" font-size=\"11\">" << s.label
        << "</text>\n";
    legend_y += 18.0;
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

}  // namespace lexplan
