#include "lexplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "lexplan/graph.hpp"
#include "lexplan/search.hpp"
#include "lexplan/sim.hpp"

namespace lexplan {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double median_seconds(int repetitions, F&& run) {
  run();  // warmup
  std::vector<double> times;
  for (int r = 0; r < repetitions; ++r) {
    const auto t0 = Clock::now();
    run();
    times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return median(std::move(times));
}

}  // namespace

void BenchmarkOptions::validate() const {
  if (densities.empty() || k_levels.empty()) {
    throw std::invalid_argument("benchmark sweeps must not be empty");
  }
  for (double d : densities) {
    if (!(d > 0.0) || d > 1.0) {
      throw std::invalid_argument("benchmark densities must lie in (0, 1]");
    }
  }
  for (int k : k_levels) {
    if (k < 1 || k > 3) {
      throw std::invalid_argument("benchmark k levels must be 1, 2 or 3");
    }
  }
  if (repetitions < 5) {
    throw std::invalid_argument("benchmark needs at least 5 repetitions");
  }
}

Hierarchy hierarchy_for_levels(int k) {
  switch (k) {
    case 1:
      return {CostKind::Distance};
    case 2:
      return {CostKind::Heading, CostKind::Distance};
    case 3:
      return {CostKind::Risk, CostKind::Heading, CostKind::Distance};
    default:
      throw std::invalid_argument("k must be 1, 2 or 3");
  }
}

BenchmarkWorld make_benchmark_world(std::uint64_t seed) {
  SplitMix64 rng(seed ^ 0xbe7c4a11ULL);
  std::vector<Point> points;
  for (int c = 0; c < 6; ++c) {
    const Point center{rng.uniform(1.5, 6.0), rng.uniform(-1.2, 1.2)};
    const auto ring = sample_circle(center, rng.uniform(0.05, 0.25), 0.1);
    points.insert(points.end(), ring.begin(), ring.end());
  }
  return {ReferencePath({{0.0, 0.0}, {12.0, 0.0}}), Pose2D(0.0, 0.0, 0.0), ObstacleSet(std::move(points))};
}

std::vector<BenchmarkRecord> run_benchmark(const BenchmarkOptions& options,
                                           const std::function<void(const BenchmarkRecord&)>& progress) {
  options.validate();
  const BenchmarkWorld world = make_benchmark_world(options.seed);
  const CostConfig ccfg;
  std::vector<BenchmarkRecord> records;
  for (const double density : options.densities) {
    GraphConfig gcfg;
    gcfg.station_step = density;
    gcfg.lateral_step = density;
    const PlanGraph graph = generate_graph(world.reference, world.robot, world.obstacles, gcfg, ccfg);
    const double construction = median_seconds(options.repetitions, [&] {
      generate_graph(world.reference, world.robot, world.obstacles, gcfg, ccfg);
    });
    for (const int k : options.k_levels) {
      const CostGraph costs = graph.cost_graph(hierarchy_for_levels(k));
      SearchOptions search;
      search.tie_epsilon = ccfg.tie_epsilon;
      BenchmarkRecord rec;
      rec.density = density;
      rec.node_count = graph.node_count();
      rec.edge_count = graph.edge_count();
      rec.k = k;
      rec.repetitions = options.repetitions;
      rec.construction_seconds = construction;
      rec.search_naive_seconds = median_seconds(options.repetitions, [&] {
        lex_search_naive(costs, graph.init_node(), search);
      });
      rec.search_heap_seconds = median_seconds(options.repetitions, [&] {
        lex_search_heap(costs, graph.init_node(), search);
      });
      records.push_back(rec);
      if (progress) {
        progress(rec);
      }
    }
  }
  return records;
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_linear needs two or more paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit_linear needs at least two distinct x values");
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace lexplan
