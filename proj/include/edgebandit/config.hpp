#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgebandit/engine.hpp"

namespace edgebandit {

// A fully assembled configuration plus the provenance of each field:
// "reference" for values pinned by the named scenario, "artifact-default"
// for values this project had to choose, "user" for anything overridden.
struct ParsedExperiment {
    ExperimentConfig config;
    std::map<std::string, std::string> sources;
};

/// Named scenario bundles: "stable", "unstable", "tidal". The tidal preset
/// carries the full reference parameterization (6 users, 2 servers, 20000
/// slots, tidal traffic with 150-slot half-periods, ATOA with epsilon 0.01,
/// xi 0.1, window 10).
ParsedExperiment load_preset(const std::string& name);

/// Strict deserialization: unknown keys, wrong types, missing required keys
/// and out-of-range values each produce a diagnostic naming the key. A
/// top-level "sources" object is accepted and ignored. "link_capacity" may
/// be a scalar shorthand for a uniform matrix.
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Echo form: the config JSON plus the "sources" provenance map. Feeding
/// the echo back into config_from_json yields the identical effective
/// configuration.
nlohmann::json echo_config(const ParsedExperiment& parsed);

/// Applies one `key=value` override (dotted path, value parsed as JSON when
/// possible, else kept as a string) onto a config JSON document.
void apply_set(nlohmann::json& j, const std::string& key_equals_value);

/// Assembles preset -> config file -> --set overrides, validates, and
/// tracks provenance. At least one of preset/config_file must be given.
ParsedExperiment assemble_config(const std::optional<std::string>& preset,
                                 const std::optional<std::filesystem::path>& config_file,
                                 const std::vector<std::string>& set_overrides);

}  // namespace edgebandit
