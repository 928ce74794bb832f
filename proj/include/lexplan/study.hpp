#pragma once

#include <optional>
#include <vector>

#include "lexplan/costs.hpp"
#include "lexplan/geometry.hpp"
#include "lexplan/sim.hpp"

namespace lexplan {

struct CriteriaStudyRow {
  Hierarchy hierarchy;
  /// Risk, heading and distance of the planned lattice path, whether or not
  /// the criterion took part in the optimization.
  CostVector canonical_cost = CostVector::zeros(3);
  std::vector<Point> path;
  bool found = false;
};

struct CriteriaStudy {
  /// Where the lattice was rooted: the first replan of a closed-loop run, or
  /// the start pose with every obstacle known if the run never replanned.
  Pose2D robot;
  int tick = 0;
  std::size_t node_count = 0;
  std::vector<CriteriaStudyRow> rows;
};

/// [distance], [heading, distance], [risk, heading, distance].
std::vector<Hierarchy> study_hierarchies();

/// Plans once from the same lattice under each hierarchy.
CriteriaStudy criteria_study(const Scenario& scenario,
                             const std::vector<Hierarchy>& hierarchies = study_hierarchies());

}  // namespace lexplan
