#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "centi/model.hpp"

namespace centi {

/// Parses the INI-style experiment document:
///
///     # comment
///     [section]
///     key = value
///
/// Sections are robot, joint, leg, motor, gait, world and experiment. Keys
/// left out take their defaults. Setting `shape` under [leg] first loads that
/// shape's default geometry, so other [leg] keys override it regardless of
/// the order they appear in. The result is validated.
///
/// Throws ConfigError ("line N: ...") on syntax errors, unknown sections or
/// keys and malformed values, and on any violated invariant.
ExperimentConfig load_config(std::string_view text);

/// Reads and parses a config file; IoError if it cannot be read.
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Writes every field. Numbers use the shortest representation that parses
/// back to the same double, so load_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace centi
