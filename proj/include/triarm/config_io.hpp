#pragma once

#include <string>

#include "triarm/experiment.hpp"

namespace triarm {

/// @brief Parse a sectioned key/value config document.
///
/// Format: `[section]` headers, `key = value` lines, `#` or `;` comments.
/// Unknown sections or keys raise ConfigError, as do malformed values; the
/// parsed configuration is range-validated before being returned.
/// Quaternions are written as four whitespace-separated reals "a b c d".
ExperimentConfig parse_config(const std::string& text);

/// Read and parse a config file. Throws ConfigError when unreadable.
ExperimentConfig load_config_file(const std::string& path);

/// Serialize with full double precision; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

std::string correction_name(Correction method);
Correction correction_from_name(const std::string& name);

}  // namespace triarm
