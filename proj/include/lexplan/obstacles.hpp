#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lexplan/geometry.hpp"

namespace lexplan {

/// Perceived obstacle points with a uniform-grid index for proximity queries.
///
/// Every query is exact: the grid only prunes cells that cannot contain a
/// closer point than one already found.
class ObstacleSet {
 public:
  ObstacleSet() = default;
  explicit ObstacleSet(std::vector<Point> points, double cell_size = 0.5);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  /// Euclidean distance to the nearest point; nullopt when empty.
  std::optional<double> distance_to_nearest(Point p) const;

  /// Distance to the nearest point if that distance is strictly below `radius`.
  std::optional<double> nearest_within(Point p, double radius) const;

  bool any_within(Point p, double radius) const { return nearest_within(p, radius).has_value(); }

 private:
  std::int64_t cell_x(double x) const;
  std::int64_t cell_y(double y) const;
  double scan_cell(std::int64_t cx, std::int64_t cy, Point p, double best_sq) const;

  std::vector<Point> points_;
  // Points reordered by cell, CSR style.
  std::vector<Point> sorted_;
  std::vector<std::uint32_t> cell_start_;
  Point origin_{};
  double cell_ = 0.5;
  std::int64_t nx_ = 0;
  std::int64_t ny_ = 0;
};

std::optional<double> distance_to_nearest(Point p, const ObstacleSet& obstacles);

}  // namespace lexplan
