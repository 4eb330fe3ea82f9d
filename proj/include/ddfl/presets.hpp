#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "ddfl/simloop.hpp"

namespace ddfl {

using Json = nlohmann::ordered_json;

// case1, case2, sweep-beta, sweep-xi, zero-dynamics, custom
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
bool preset_is_sweep(const std::string& name);

// Built-in scenario -> fully populated config. Unknown name -> ConfigError.
ExperimentConfig make_preset(const std::string& name);

// Overlay JSON keys (mirroring ExperimentConfig fields) onto a base config.
// Unknown keys are rejected so typos cannot silently fall back to defaults.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base);

// Every field materialized, suitable for config-resolved.json.
Json config_to_json(const ExperimentConfig& cfg);

}  // namespace ddfl
