#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "swarmgrid/engine.hpp"

namespace swarmgrid {

/// Scenario documents are JSON objects mirroring SimConfig; see README.md for
/// the schema. Missing optional fields take the SimConfig defaults.
/// Throws ParseError on malformed JSON or missing required fields; the
/// returned config is validated (InvalidConfig / SpacingViolation).
SimConfig parse_scenario(std::istream& in);
SimConfig load_scenario(const std::filesystem::path& path);

std::string dump_scenario(const SimConfig& cfg);

}  // namespace swarmgrid
