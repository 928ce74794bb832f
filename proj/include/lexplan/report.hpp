#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "lexplan/bench.hpp"
#include "lexplan/sim.hpp"
#include "lexplan/study.hpp"

namespace lexplan {

inline constexpr int kReportSchemaVersion = 1;

/// Shortest round-trip decimal form; "inf", "-inf" and "nan" for the rest.
std::string format_number(double v);

/// Run summary. Wall-clock fields are left out unless `include_timing` is set
/// so that repeated runs produce identical files.
nlohmann::json metrics_to_json(const Scenario& scenario, const RunMetrics& metrics, bool include_timing = false);

/// One row per recorded pose: tick, x, y, heading, planner output of the tick
/// that ended there ("start" for the initial pose).
std::string trace_csv(const RunMetrics& metrics);

/// Reference path, obstacles sampled over time, executed trace and every
/// replanned lattice path.
std::string run_svg(const Scenario& scenario, const RunMetrics& metrics);

nlohmann::json study_to_json(const Scenario& scenario, const CriteriaStudy& study);
std::string study_table(const CriteriaStudy& study);

std::string bench_csv(std::span<const BenchmarkRecord> records);
/// Search and construction time against node count, one series per method and K.
std::string bench_svg(std::span<const BenchmarkRecord> records);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lexplan
