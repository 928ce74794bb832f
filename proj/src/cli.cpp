#include "lexplan/cli.hpp"

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "lexplan/report.hpp"
#include "lexplan/scenario_io.hpp"
#include "lexplan/study.hpp"

#ifndef LEXPLAN_SCENARIO_DIR
#define LEXPLAN_SCENARIO_DIR "scenarios"
#endif

namespace lexplan {

namespace fs = std::filesystem;

fs::path scenario_directory() {
  if (const char* env = std::getenv("LEXPLAN_SCENARIO_DIR"); env && *env) {
    return env;
  }
  return LEXPLAN_SCENARIO_DIR;
}

fs::path resolve_scenario_path(const std::string& name_or_path) {
  const fs::path direct(name_or_path);
  if (fs::exists(direct)) {
    return direct;
  }
  fs::path bundled = scenario_directory() / name_or_path;
  if (bundled.extension() != ".json") {
    bundled += ".json";
  }
  if (fs::exists(bundled)) {
    return bundled;
  }
  throw std::runtime_error("scenario not found: " + name_or_path);
}

Scenario load_scenario(const ScenarioArgs& args) {
  std::vector<std::string> overrides;
  if (args.seed) {
    overrides.push_back("sim.seed=" + std::to_string(*args.seed));
  }
  overrides.insert(overrides.end(), args.overrides.begin(), args.overrides.end());
  return load_scenario(resolve_scenario_path(args.scenario), overrides);
}

int cmd_run(const ScenarioArgs& args, const fs::path& out_dir, bool include_timing, std::ostream& out,
            std::ostream& err) {
  try {
    const Scenario scenario = load_scenario(args);
    const RunMetrics metrics = run_scenario(scenario);
    fs::create_directories(out_dir);
    write_text_file(out_dir / "metrics.json", metrics_to_json(scenario, metrics, include_timing).dump(2) + "\n");
    write_text_file(out_dir / "trace.csv", trace_csv(metrics));
    write_text_file(out_dir / "run.svg", run_svg(scenario, metrics));
    out << scenario.name << ": " << (metrics.goal_reached ? "goal reached" : "did not reach goal") << " after "
        << metrics.ticks_elapsed << " ticks, " << metrics.replan_count << " replans, " << metrics.hold_intervals
        << " hold intervals\n";
    if (metrics.goal_reached) {
      return kExitGoal;
    }
    if (!metrics.failure.empty()) {
      err << "error: " << metrics.failure << "\n";
      return kExitError;
    }
    return kExitTimeout;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_validate(const ScenarioArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const Scenario scenario = load_scenario(args);
    out << "ok: " << scenario.name << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_criteria_study(const ScenarioArgs& args, const std::optional<fs::path>& out_dir, std::ostream& out,
                       std::ostream& err) {
  try {
    const Scenario scenario = load_scenario(args);
    const CriteriaStudy study = criteria_study(scenario);
    out << study_table(study);
    if (out_dir) {
      fs::create_directories(*out_dir);
      write_text_file(*out_dir / "study.json", study_to_json(scenario, study).dump(2) + "\n");
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_benchmark(const BenchmarkOptions& options, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  try {
    const auto records = run_benchmark(options, [&out](const BenchmarkRecord& r) {
      out << "density " << r.density << " K=" << r.k << ": " << r.node_count << " nodes, construction "
          << r.construction_seconds << " s, naive " << r.search_naive_seconds << " s, heap "
          << r.search_heap_seconds << " s\n";
    });
    fs::create_directories(out_dir);
    write_text_file(out_dir / "bench.csv", bench_csv(records));
    write_text_file(out_dir / "bench.svg", bench_svg(records));

    std::vector<double> nodes;
    std::vector<double> construction;
    for (const BenchmarkRecord& r : records) {
      if (r.k == records.front().k) {
        nodes.push_back(static_cast<double>(r.node_count));
        construction.push_back(r.construction_seconds);
      }
    }
    if (nodes.size() >= 2) {
      const LinearFit fit = fit_linear(nodes, construction);
      out << "construction time vs nodes: R^2 = " << fit.r_squared << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Lexicographic multi-criteria local planner"};
  app.require_subcommand(1);

  ScenarioArgs args;
  std::string out_dir = ".";
  const auto add_scenario_flags = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", args.scenario, "Scenario file or bundled scenario name")->required();
    cmd->add_option("--seed", args.seed, "Override sim.seed");
    cmd->add_option("--set", args.overrides, "Override a field, e.g. --set graph_config.d_span=1.5");
  };

  CLI::App* run = app.add_subcommand("run", "Run a scenario and write metrics.json, trace.csv and run.svg");
  add_scenario_flags(run);
  run->add_option("--out", out_dir, "Output directory");
  bool timing = false;
  run->add_flag("--timing", timing, "Include wall-clock timings in metrics.json");

  CLI::App* study = app.add_subcommand("criteria-study", "Compare criteria hierarchies on one planning step");
  add_scenario_flags(study);
  std::optional<std::string> study_out;
  study->add_option("--out", study_out, "Also write study.json to this directory");

  CLI::App* bench = app.add_subcommand("benchmark", "Time graph construction and both searches");
  BenchmarkOptions bopts;
  bench->add_option("--density", bopts.densities, "Lattice spacings in meters")->delimiter(',');
  bench->add_option("--k-levels", bopts.k_levels, "Numbers of criteria (1 to 3)")->delimiter(',');
  bench->add_option("--reps", bopts.repetitions, "Timed repetitions per point (at least 5)");
  bench->add_option("--seed", bopts.seed, "Obstacle layout seed");
  bench->add_option("--out", out_dir, "Output directory");

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  add_scenario_flags(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  if (run->parsed()) return cmd_run(args, out_dir, timing, std::cout, std::cerr);
  if (validate->parsed()) return cmd_validate(args, std::cout, std::cerr);
  if (study->parsed()) {
    return cmd_criteria_study(args, study_out ? std::optional<fs::path>(*study_out) : std::nullopt, std::cout,
                              std::cerr);
  }
  return cmd_benchmark(bopts, out_dir, std::cout, std::cerr);
}

}  // namespace lexplan
