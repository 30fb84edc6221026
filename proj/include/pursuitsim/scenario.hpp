#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pursuitsim/engine.hpp"

namespace pursuitsim {

/// Parses a scenario document (TOML subset, see docs/scenario_format.md)
/// into a validated config. Omitted learning/simulation fields take their
/// defaults. Throws ParseError with a line number on syntax problems and
/// ValidationError naming section.field on semantic ones.
ScenarioConfig parse_scenario(const std::string& text);

/// parse_scenario over a file's contents. The file's stem becomes the
/// scenario name unless the document sets one.
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical serialization of a config. Re-parsing the output yields a
/// config equal to the input (numbers are printed with full round-trip
/// precision).
std::string serialize_scenario(const ScenarioConfig& cfg);

struct BundledScenario {
  std::string name;
  std::string filename;
  const char* text;
};

/// The three shipped scenario documents.
const std::vector<BundledScenario>& bundled_scenarios();

/// Convenience: parsed bundled scenario by 1-based number or name.
ScenarioConfig bundled_scenario_config(const std::string& key);

}  // namespace pursuitsim
