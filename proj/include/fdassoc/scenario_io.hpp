#pragma once

#include <string>

#include <json.hpp>

#include "fdassoc/model.hpp"

namespace fdassoc {

RawScenario raw_from_json(const nlohmann::json& doc);
nlohmann::json raw_to_json(const RawScenario& raw);

/// Parses scenario text; errors carry `origin:line:` context.
RawScenario parse_scenario(const std::string& text, const std::string& origin = "<string>");
RawScenario load_scenario(const std::string& path);

/// Serializes a scenario from the values it was validated from.
std::string serialize_scenario(const Scenario& s);

/// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string scenario_hash(const RawScenario& raw);

}  // namespace fdassoc
