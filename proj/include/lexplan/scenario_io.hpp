#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "lexplan/sim.hpp"

namespace lexplan {

inline constexpr int kScenarioSchemaVersion = 1;

/// Malformed scenario document. `field()` is the dotted path of the offending
/// entry, e.g. "graph_config.d_span" or "obstacles[2].motion[0].t".
class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses a scenario document. Lengths are meters, times seconds, angles
/// radians; any angle field also accepts degrees under a "_deg" suffix.
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);

/// Applies "dotted.path=value" to a JSON document. The value is parsed as
/// JSON when possible and kept as a string otherwise.
void apply_override(nlohmann::json& doc, std::string_view assignment);

nlohmann::json read_json_file(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path, std::span<const std::string> overrides = {});

std::string_view to_string(Connectivity c);
std::string_view to_string(SearchAlgorithm s);

}  // namespace lexplan
