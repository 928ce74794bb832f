#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lexplan/costs.hpp"
#include "lexplan/geometry.hpp"
#include "lexplan/obstacles.hpp"

namespace lexplan {

struct BenchmarkRecord {
  /// Station and lateral spacing of the lattice, meters.
  double density = 0.0;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  int k = 0;
  /// Medians over `repetitions` timed runs after one discarded warmup.
  double construction_seconds = 0.0;
  double search_naive_seconds = 0.0;
  double search_heap_seconds = 0.0;
  int repetitions = 0;
};

struct BenchmarkOptions {
  std::vector<double> densities{0.1, 0.07, 0.05, 0.04, 0.03, 0.025, 0.02};
  std::vector<int> k_levels{1, 2, 3};
  int repetitions = 5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// [distance], [heading, distance], [risk, heading, distance] for k = 1, 2, 3.
Hierarchy hierarchy_for_levels(int k);

/// Straight 12 m corridor with seeded obstacle clusters inside the lattice
/// window; the robot sits at the origin facing +x.
struct BenchmarkWorld {
  ReferencePath reference;
  Pose2D robot;
  ObstacleSet obstacles;
};
BenchmarkWorld make_benchmark_world(std::uint64_t seed);

/// Times graph construction and both searches for every density and K.
/// Runs serially so the timings do not compete for cores. `progress` is
/// called after each record.
std::vector<BenchmarkRecord> run_benchmark(const BenchmarkOptions& options,
                                           const std::function<void(const BenchmarkRecord&)>& progress = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

}  // namespace lexplan
