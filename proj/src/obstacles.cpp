#include "lexplan/obstacles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lexplan {

namespace {
constexpr std::int64_t kMaxCellsPerAxis = 1024;
}

ObstacleSet::ObstacleSet(std::vector<Point> points, double cell_size)
    : points_(std::move(points)), cell_(cell_size) {
  if (!(cell_size > 0.0)) {
    throw std::invalid_argument("obstacle grid cell size must be positive");
  }
  if (points_.empty()) {
    return;
  }
  Point lo = points_.front();
  Point hi = points_.front();
  for (const Point& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("obstacle point is not finite");
    }
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double extent = std::max(hi.x - lo.x, hi.y - lo.y);
  cell_ = std::max(cell_, extent / static_cast<double>(kMaxCellsPerAxis - 1));
  origin_ = lo;
  nx_ = static_cast<std::int64_t>(std::floor((hi.x - lo.x) / cell_)) + 1;
  ny_ = static_cast<std::int64_t>(std::floor((hi.y - lo.y) / cell_)) + 1;

  const auto cell_count = static_cast<std::size_t>(nx_ * ny_);
  std::vector<std::uint32_t> counts(cell_count + 1, 0);
  std::vector<std::size_t> cell_of(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto cx = std::clamp<std::int64_t>(cell_x(points_[i].x), 0, nx_ - 1);
    const auto cy = std::clamp<std::int64_t>(cell_y(points_[i].y), 0, ny_ - 1);
    cell_of[i] = static_cast<std::size_t>(cy * nx_ + cx);
    ++counts[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cell_count; ++c) {
    counts[c + 1] += counts[c];
  }
  cell_start_ = counts;
  sorted_.resize(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    sorted_[counts[cell_of[i]]++] = points_[i];
  }
}

std::int64_t ObstacleSet::cell_x(double x) const {
  return static_cast<std::int64_t>(std::floor((x - origin_.x) / cell_));
}

std::int64_t ObstacleSet::cell_y(double y) const {
  return static_cast<std::int64_t>(std::floor((y - origin_.y) / cell_));
}

double ObstacleSet::scan_cell(std::int64_t cx, std::int64_t cy, Point p, double best_sq) const {
  if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) {
    return best_sq;
  }
  const auto c = static_cast<std::size_t>(cy * nx_ + cx);
  for (std::uint32_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
    const double dx = sorted_[k].x - p.x;
    const double dy = sorted_[k].y - p.y;
    best_sq = std::min(best_sq, dx * dx + dy * dy);
  }
  return best_sq;
}

std::optional<double> ObstacleSet::distance_to_nearest(Point p) const {
  if (points_.empty()) {
    return std::nullopt;
  }
  const std::int64_t cx = cell_x(p.x);
  const std::int64_t cy = cell_y(p.y);
  // Rings beyond this index contain no grid cells.
  const std::int64_t max_ring =
      std::max({std::abs(cx), std::abs(cx - (nx_ - 1)), std::abs(cy), std::abs(cy - (ny_ - 1))});
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::int64_t r = 0; r <= max_ring; ++r) {
    if (r == 0) {
      best_sq = scan_cell(cx, cy, p, best_sq);
    } else {
      for (std::int64_t dx = -r; dx <= r; ++dx) {
        best_sq = scan_cell(cx + dx, cy - r, p, best_sq);
        best_sq = scan_cell(cx + dx, cy + r, p, best_sq);
      }
      for (std::int64_t dy = -r + 1; dy <= r - 1; ++dy) {
        best_sq = scan_cell(cx - r, cy + dy, p, best_sq);
        best_sq = scan_cell(cx + r, cy + dy, p, best_sq);
      }
    }
    // Unvisited cells are at least r * cell away.
    const double bound = static_cast<double>(r) * cell_;
    if (best_sq <= bound * bound) {
      break;
    }
  }
  return std::sqrt(best_sq);
}

std::optional<double> ObstacleSet::nearest_within(Point p, double radius) const {
  if (points_.empty() || !(radius > 0.0)) {
    return std::nullopt;
  }
  const std::int64_t x0 = std::max<std::int64_t>(0, cell_x(p.x - radius));
  const std::int64_t x1 = std::min<std::int64_t>(nx_ - 1, cell_x(p.x + radius));
  const std::int64_t y0 = std::max<std::int64_t>(0, cell_y(p.y - radius));
  const std::int64_t y1 = std::min<std::int64_t>(ny_ - 1, cell_y(p.y + radius));
  double best_sq = std::numeric_limits<double>::infinity();
  for (std::int64_t y = y0; y <= y1; ++y) {
    for (std::int64_t x = x0; x <= x1; ++x) {
      best_sq = scan_cell(x, y, p, best_sq);
    }
  }
  const double best = std::sqrt(best_sq);
  if (best < radius) {
    return best;
  }
  return std::nullopt;
}

std::optional<double> distance_to_nearest(Point p, const ObstacleSet& obstacles) {
  return obstacles.distance_to_nearest(p);
}

}  // namespace lexplan
