#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lexplan/geometry.hpp"
#include "lexplan/obstacles.hpp"

namespace lexplan {

/// Raised when a configuration lies inside an obstacle.
class CollisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed lattice geometry, e.g. zero-length edges.
class InvalidGraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-capacity vector of non-negative costs; index 0 is the highest priority.
/// Entries may be +infinity (unreached cost-to-come) but never negative or NaN.
class CostVector {
 public:
  static constexpr std::size_t kMaxLevels = 8;

  CostVector() = default;
  CostVector(std::initializer_list<double> values);
  explicit CostVector(std::span<const double> values);

  static CostVector zeros(std::size_t levels);
  static CostVector infinite(std::size_t levels);

  std::size_t size() const { return size_; }
  double operator[](std::size_t level) const { return values_[level]; }
  std::span<const double> values() const { return {values_.data(), size_}; }
  bool is_finite() const;

  /// Overwrites one level; the value must be non-negative.
  void set(std::size_t level, double value);

  CostVector& operator+=(const CostVector& other);
  friend CostVector operator+(CostVector a, const CostVector& b) { return a += b; }
  friend bool operator==(const CostVector& a, const CostVector& b);

  std::string to_string() const;

 private:
  std::array<double, kMaxLevels> values_{};
  std::size_t size_ = 0;
};

enum class CostKind { Risk, Heading, Distance };

/// Ordered list of cost criteria, highest priority first.
using Hierarchy = std::vector<CostKind>;

/// Risk, heading, distance. Edge costs are stored in this order.
Hierarchy canonical_hierarchy();
std::string_view to_string(CostKind kind);
CostKind parse_cost_kind(std::string_view name);
std::string to_string(const Hierarchy& hierarchy);
/// Parses comma-separated names such as "heading,distance".
Hierarchy parse_hierarchy(std::string_view text);

/// Picks the hierarchy's levels out of a canonical (risk, heading, distance) vector.
CostVector select_levels(const CostVector& canonical, const Hierarchy& hierarchy);

struct CostConfig {
  /// Risk activation threshold in 1/m. Infinity disables the risk cost.
  double th_risk = 2.0;
  /// Heading deviation threshold in radians.
  double th_head = deg_to_rad(5.0);
  /// Arc-length step of the midpoint quadrature, meters.
  double integration_step = 0.1;
  /// Relative (and near-zero absolute) tolerance for cost ties.
  double tie_epsilon = 1e-9;

  void validate() const;
};

/// Thresholded inverse obstacle distance. Throws CollisionError when the
/// point coincides with an obstacle.
double risk_at(Point p, const ObstacleSet& obstacles, const CostConfig& cfg);

/// Thresholded heading deviation from the reference heading.
double heading_penalty(double heading, double reference_heading, const CostConfig& cfg);

/// Integrates (risk, heading, distance) along a polyline with the midpoint
/// rule. The distance entry is the exact length.
CostVector edge_cost(std::span<const Point> polyline, const ObstacleSet& obstacles,
                     const ReferencePath& ref, const CostConfig& cfg);

enum class LexOrder { Less, Equal, Greater };

/// Whether two cost entries are tied under the relative/absolute tolerance.
bool costs_tied(double a, double b, double tie_epsilon);

/// Lexicographic comparison with per-level tolerance.
LexOrder lex_compare(const CostVector& a, const CostVector& b, double tie_epsilon);

}  // namespace lexplan
