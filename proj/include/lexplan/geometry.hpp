#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace lexplan {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

double norm(Point v);
double distance(Point a, Point b);

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Smallest absolute rotation between two headings, in [0, pi].
double angular_difference(double a, double b);

/// Direction of travel from `from` to `to`.
double heading_between(Point from, Point to);

/// Planar configuration. The heading is kept in (-pi, pi].
class Pose2D {
 public:
  Pose2D() = default;
  Pose2D(double x, double y, double heading);
  Pose2D(Point position, double heading);

  double x() const { return x_; }
  double y() const { return y_; }
  double heading() const { return heading_; }
  Point position() const { return {x_, y_}; }

  Pose2D with_heading(double heading) const { return {x_, y_, heading}; }
  Pose2D translated(Point delta) const { return {x_ + delta.x, y_ + delta.y, heading_}; }
  Pose2D rotated(double delta) const { return {x_, y_, heading_ + delta}; }

  friend bool operator==(const Pose2D&, const Pose2D&) = default;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double heading_ = 0.0;
};

struct PathProjection {
  std::size_t segment_index = 0;
  double arclength = 0.0;
  /// Positive to the left of the direction of travel.
  double lateral_offset = 0.0;
  double segment_heading = 0.0;
};

/// Polyline with an arc-length index and per-segment headings.
///
/// Construction rejects fewer than two vertices and repeated consecutive
/// vertices, so every segment has positive length.
class ReferencePath {
 public:
  explicit ReferencePath(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const double> cumulative_arclength() const { return cumulative_; }
  std::span<const double> segment_headings() const { return headings_; }

  std::size_t segment_count() const { return headings_.size(); }
  double length() const { return cumulative_.back(); }
  Point front() const { return vertices_.front(); }
  Point back() const { return vertices_.back(); }

  /// Index of the segment containing arclength `s`, clamped to the path.
  /// A vertex shared by two segments belongs to the later one.
  std::size_t segment_at(double s) const;
  Point point_at(double s) const;
  double heading_at(double s) const;
  /// Unit normal pointing to the left of travel at arclength `s`.
  Point left_normal_at(double s) const;

  /// Sub-path covering [from, to], both clamped to the path.
  ReferencePath slice(double from, double to) const;

 private:
  std::vector<Point> vertices_;
  std::vector<double> cumulative_;
  std::vector<double> headings_;
};

/// Projects onto the globally nearest segment. Ties go to the lower segment
/// index; projections past either end clamp to that endpoint.
PathProjection project_onto_path(Point p, const ReferencePath& path);

/// Same as project_onto_path but only considers arclengths in [from, to].
PathProjection project_onto_path(Point p, const ReferencePath& path, double from, double to);

/// Evenly spaced samples along segment [a, b], spacing at most `step`,
/// endpoints included.
std::vector<Point> sample_segment(Point a, Point b, double step);

}  // namespace lexplan
