#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lexplan/bench.hpp"
#include "lexplan/sim.hpp"

namespace lexplan {

/// Exit codes of `run`.
inline constexpr int kExitGoal = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTimeout = 2;

struct ScenarioArgs {
  /// File path, or the name of a bundled scenario.
  std::string scenario;
  std::optional<std::uint64_t> seed;
  /// "dotted.path=value" overrides, applied in order.
  std::vector<std::string> overrides;
};

/// Bundled scenarios live in LEXPLAN_SCENARIO_DIR when that is set, else in
/// the directory configured at build time.
std::filesystem::path scenario_directory();
std::filesystem::path resolve_scenario_path(const std::string& name_or_path);
Scenario load_scenario(const ScenarioArgs& args);

int cmd_run(const ScenarioArgs& args, const std::filesystem::path& out_dir, bool include_timing, std::ostream& out,
            std::ostream& err);
int cmd_validate(const ScenarioArgs& args, std::ostream& out, std::ostream& err);
int cmd_criteria_study(const ScenarioArgs& args, const std::optional<std::filesystem::path>& out_dir,
                       std::ostream& out, std::ostream& err);
int cmd_benchmark(const BenchmarkOptions& options, const std::filesystem::path& out_dir, std::ostream& out,
                  std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv);

}  // namespace lexplan
