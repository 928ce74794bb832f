#include "lexplan/costs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lexplan {

namespace {

void check_entry(double v) {
  if (std::isnan(v) || v < 0.0) {
    throw std::invalid_argument("cost entries must be non-negative");
  }
}

}  // namespace

CostVector::CostVector(std::initializer_list<double> values)
    : CostVector(std::span<const double>(values.begin(), values.size())) {}

CostVector::CostVector(std::span<const double> values) : size_(values.size()) {
  if (values.empty() || values.size() > kMaxLevels) {
    throw std::invalid_argument("cost vector needs between 1 and 8 levels");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    check_entry(values[i]);
    values_[i] = values[i];
  }
}

CostVector CostVector::zeros(std::size_t levels) {
  std::array<double, kMaxLevels> v{};
  return CostVector(std::span<const double>(v.data(), levels));
}

CostVector CostVector::infinite(std::size_t levels) {
  std::array<double, kMaxLevels> v{};
  v.fill(std::numeric_limits<double>::infinity());
  return CostVector(std::span<const double>(v.data(), levels));
}

bool CostVector::is_finite() const {
  return std::all_of(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(size_),
                     [](double v) { return std::isfinite(v); });
}

void CostVector::set(std::size_t level, double value) {
  check_entry(value);
  values_.at(level) = value;
}

CostVector& CostVector::operator+=(const CostVector& other) {
  if (other.size_ != size_) {
    throw std::logic_error("cost vector length mismatch");
  }
  for (std::size_t i = 0; i < size_; ++i) {
    values_[i] += other.values_[i];
  }
  return *this;
}

bool operator==(const CostVector& a, const CostVector& b) {
  return a.size_ == b.size_ && std::equal(a.values_.begin(),
                                          a.values_.begin() + static_cast<std::ptrdiff_t>(a.size_),
                                          b.values_.begin());
}

std::string CostVector::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < size_; ++i) {
    os << (i ? ", " : "") << values_[i];
  }
  os << ')';
  return os.str();
}

Hierarchy canonical_hierarchy() { return {CostKind::Risk, CostKind::Heading, CostKind::Distance}; }

std::string_view to_string(CostKind kind) {
  switch (kind) {
    case CostKind::Risk:
      return "risk";
    case CostKind::Heading:
      return "heading";
    case CostKind::Distance:
      return "distance";
  }
  return "?";
}

CostKind parse_cost_kind(std::string_view name) {
  if (name == "risk") return CostKind::Risk;
  if (name == "heading") return CostKind::Heading;
  if (name == "distance") return CostKind::Distance;
  throw std::invalid_argument("unknown cost criterion '" + std::string(name) + "'");
}

std::string to_string(const Hierarchy& hierarchy) {
  std::string out;
  for (std::size_t i = 0; i < hierarchy.size(); ++i) {
    if (i) out += ',';
    out += to_string(hierarchy[i]);
  }
  return out;
}

Hierarchy parse_hierarchy(std::string_view text) {
  Hierarchy out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    out.push_back(parse_cost_kind(item));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) {
    throw std::invalid_argument("cost hierarchy is empty");
  }
  return out;
}

CostVector select_levels(const CostVector& canonical, const Hierarchy& hierarchy) {
  if (canonical.size() != 3) {
    throw std::logic_error("canonical cost vector must have three levels");
  }
  std::array<double, CostVector::kMaxLevels> v{};
  for (std::size_t i = 0; i < hierarchy.size(); ++i) {
    v[i] = canonical[static_cast<std::size_t>(hierarchy[i])];
  }
  return CostVector(std::span<const double>(v.data(), hierarchy.size()));
}

void CostConfig::validate() const {
  if (!(th_risk > 0.0)) {
    throw std::invalid_argument("cost_config.th_risk must be positive or infinite");
  }
  if (!(th_head >= 0.0 && th_head < kPi)) {
    throw std::invalid_argument("cost_config.th_head must lie in [0, pi)");
  }
  if (!(integration_step > 0.0) || !std::isfinite(integration_step)) {
    throw std::invalid_argument("cost_config.integration_step must be positive");
  }
  if (!(tie_epsilon >= 0.0)) {
    throw std::invalid_argument("cost_config.tie_epsilon must be non-negative");
  }
}

double risk_at(Point p, const ObstacleSet& obstacles, const CostConfig& cfg) {
  if (std::isinf(cfg.th_risk)) {
    return 0.0;
  }
  // Widened so the threshold decision below is made on 1/d, not on d.
  const double activation = (1.0 / cfg.th_risk) * (1.0 + 1e-9);
  const auto d = obstacles.nearest_within(p, activation);
  if (!d) {
    return 0.0;
  }
  if (*d == 0.0) {
    throw CollisionError("risk evaluated at an obstacle point");
  }
  const double r = 1.0 / *d;
  return r > cfg.th_risk ? r : 0.0;
}

double heading_penalty(double heading, double reference_heading, const CostConfig& cfg) {
  const double h = angular_difference(heading, reference_heading);
  return h > cfg.th_head ? h : 0.0;
}

CostVector edge_cost(std::span<const Point> polyline, const ObstacleSet& obstacles,
                     const ReferencePath& ref, const CostConfig& cfg) {
  double risk = 0.0;
  double heading = 0.0;
  double length = 0.0;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Point a = polyline[i];
    const Point b = polyline[i + 1];
    const double seg_len = distance(a, b);
    if (seg_len == 0.0) {
      continue;
    }
    const double travel = heading_between(a, b);
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(seg_len / cfg.integration_step)));
    const double sub_len = seg_len / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
      const Point mid = a + t * (b - a);
      risk += risk_at(mid, obstacles, cfg) * sub_len;
      heading += heading_penalty(travel, project_onto_path(mid, ref).segment_heading, cfg) * sub_len;
    }
    length += seg_len;
  }
  if (!(length > 0.0)) {
    throw InvalidGraphError("edge geometry has zero length");
  }
  return {risk, heading, length};
}

bool costs_tied(double a, double b, double tie_epsilon) {
  if (a == b) {
    return true;
  }
  if (std::isinf(a) || std::isinf(b)) {
    return false;
  }
  const double diff = std::fabs(a - b);
  return diff <= tie_epsilon || diff <= tie_epsilon * std::max(std::fabs(a), std::fabs(b));
}

LexOrder lex_compare(const CostVector& a, const CostVector& b, double tie_epsilon) {
  if (a.size() != b.size()) {
    throw std::logic_error("lex_compare on cost vectors of different length");
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (costs_tied(a[k], b[k], tie_epsilon)) {
      continue;
    }
    return a[k] < b[k] ? LexOrder::Less : LexOrder::Greater;
  }
  return LexOrder::Equal;
}

}  // namespace lexplan
