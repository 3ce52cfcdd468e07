#pragma once

#include <string>

#include "alertswarm/sim.hpp"

namespace alertswarm::cli {

/// Parses and validates a YAML experiment config. Every key is optional
/// and defaults to the built-in value; unknown keys are rejected. Throws
/// ParseError for unreadable/malformed files and InvalidConfig (naming
/// field, value and rule) for invariant violations.
sim::WorldConfig load_config(const std::string& path);

/// Same, from an in-memory YAML document.
sim::WorldConfig parse_config(const std::string& yaml_text);

}  // namespace alertswarm::cli
