#include "lexplan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lexplan {

double norm(Point v) { return std::sqrt(v.x * v.x + v.y * v.y); }

double distance(Point a, Point b) { return norm(a - b); }

double normalize_angle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * kPi);
  if (wrapped <= -kPi) {
    wrapped += 2.0 * kPi;
  }
  return wrapped;
}

double angular_difference(double a, double b) {
  return std::fabs(normalize_angle(a - b));
}

double heading_between(Point from, Point to) {
  return std::atan2(to.y - from.y, to.x - from.x);
}

Pose2D::Pose2D(double x, double y, double heading)
    : x_(x), y_(y), heading_(normalize_angle(heading)) {}

Pose2D::Pose2D(Point position, double heading) : Pose2D(position.x, position.y, heading) {}

ReferencePath::ReferencePath(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) {
    throw std::invalid_argument("reference path needs at least two vertices");
  }
  cumulative_.reserve(vertices_.size());
  headings_.reserve(vertices_.size() - 1);
  cumulative_.push_back(0.0);
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const double len = distance(vertices_[i], vertices_[i + 1]);
    if (!(len > 0.0)) {
      throw std::invalid_argument("reference path has repeated vertex at index " +
                                  std::to_string(i + 1));
    }
    cumulative_.push_back(cumulative_.back() + len);
    headings_.push_back(heading_between(vertices_[i], vertices_[i + 1]));
  }
}

std::size_t ReferencePath::segment_at(double s) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  if (it == cumulative_.begin()) {
    return 0;
  }
  const auto idx = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
  return std::min(idx, segment_count() - 1);
}

Point ReferencePath::point_at(double s) const {
  s = std::clamp(s, 0.0, length());
  const std::size_t i = segment_at(s);
  const double seg_len = cumulative_[i + 1] - cumulative_[i];
  const double t = std::clamp((s - cumulative_[i]) / seg_len, 0.0, 1.0);
  return vertices_[i] + t * (vertices_[i + 1] - vertices_[i]);
}

double ReferencePath::heading_at(double s) const { return headings_[segment_at(s)]; }

Point ReferencePath::left_normal_at(double s) const {
  const double h = heading_at(s);
  return {-std::sin(h), std::cos(h)};
}

ReferencePath ReferencePath::slice(double from, double to) const {
  from = std::clamp(from, 0.0, length());
  to = std::clamp(to, 0.0, length());
  if (!(to > from)) {
    throw std::invalid_argument("reference path slice is empty");
  }
  std::vector<Point> out;
  out.push_back(point_at(from));
  constexpr double kMinSpacing = 1e-9;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (cumulative_[i] > from && cumulative_[i] < to &&
        distance(vertices_[i], out.back()) > kMinSpacing) {
      out.push_back(vertices_[i]);
    }
  }
  const Point end = point_at(to);
  if (distance(end, out.back()) > kMinSpacing) {
    out.push_back(end);
  } else if (out.size() > 1) {
    out.back() = end;
  }
  if (out.size() < 2) {
    // Window narrower than floating point can resolve; keep the local direction.
    out.push_back(out.back() + 1e-9 * Point{std::cos(heading_at(from)), std::sin(heading_at(from))});
  }
  return ReferencePath(std::move(out));
}

namespace {

struct SegmentHit {
  double distance_sq;
  double t;
};

SegmentHit closest_on_segment(Point p, Point a, Point b, double t_lo, double t_hi) {
  const Point d = b - a;
  const double len_sq = d.x * d.x + d.y * d.y;
  double t = ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len_sq;
  t = std::clamp(t, t_lo, t_hi);
  const Point c = a + t * d;
  const Point r = p - c;
  return {r.x * r.x + r.y * r.y, t};
}

PathProjection make_projection(Point p, const ReferencePath& path, std::size_t i, double t) {
  const auto verts = path.vertices();
  const auto cum = path.cumulative_arclength();
  const Point a = verts[i];
  const Point d = verts[i + 1] - a;
  const Point c = a + t * d;
  const double cross = d.x * (p.y - a.y) - d.y * (p.x - a.x);
  const double dist = distance(p, c);
  PathProjection proj;
  proj.segment_index = i;
  proj.arclength = cum[i] + t * (cum[i + 1] - cum[i]);
  proj.lateral_offset = cross < 0.0 ? -dist : dist;
  proj.segment_heading = path.segment_headings()[i];
  return proj;
}

}  // namespace

PathProjection project_onto_path(Point p, const ReferencePath& path) {
  return project_onto_path(p, path, 0.0, path.length());
}

PathProjection project_onto_path(Point p, const ReferencePath& path, double from, double to) {
  from = std::clamp(from, 0.0, path.length());
  to = std::clamp(to, from, path.length());
  const auto verts = path.vertices();
  const auto cum = path.cumulative_arclength();
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_i = path.segment_at(from);
  double best_t = 0.0;
  for (std::size_t i = 0; i < path.segment_count(); ++i) {
    if (cum[i + 1] < from || cum[i] > to) {
      continue;
    }
    const double seg_len = cum[i + 1] - cum[i];
    const double t_lo = std::clamp((from - cum[i]) / seg_len, 0.0, 1.0);
    const double t_hi = std::clamp((to - cum[i]) / seg_len, 0.0, 1.0);
    const SegmentHit hit = closest_on_segment(p, verts[i], verts[i + 1], t_lo, t_hi);
    if (hit.distance_sq < best) {
      best = hit.distance_sq;
      best_i = i;
      best_t = hit.t;
    }
  }
  return make_projection(p, path, best_i, best_t);
}

std::vector<Point> sample_segment(Point a, Point b, double step) {
  const double len = distance(a, b);
  const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(len / step)));
  std::vector<Point> out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n);
    out.push_back(a + t * (b - a));
  }
  return out;
}

}  // namespace lexplan
