#pragma once

#include "nbhd/exact/serialize.hpp"
#include "nbhd/scenario/scenario.hpp"

#include <string>

namespace nbhd::scenario {

using exact::Json;

[[nodiscard]] Json to_json(const Scenario& s);
/// Throws ParseError naming the offending field, SchemaVersionError.
[[nodiscard]] Scenario scenario_from_json(const Json& j);
/// Canonical text: two-space indent, trailing newline.
[[nodiscard]] std::string dump_scenario(const Scenario& s);
[[nodiscard]] Scenario parse_scenario(const std::string& text);
[[nodiscard]] Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// FNV-1a 64 of the canonical text, hex.
[[nodiscard]] std::string scenario_hash(const Scenario& s);

}  // namespace nbhd::scenario
