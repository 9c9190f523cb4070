#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "formtrack/engine.hpp"

namespace formtrack {

/// Parse a scenario document (JSON, strict: unknown keys are ParseErrors).
/// Required sections: agents, formation, target, control, noise, integration,
/// run. The result is fully validated. origin only labels error messages.
Scenario parse_scenario(const std::string& text, std::string_view origin = "<memory>");

/// Load and validate a scenario file. Throws IoError when the file cannot be
/// read, otherwise as parse_scenario.
Scenario load_scenario(const std::filesystem::path& path);

/// Serialize a scenario to the same document format; round-trips through
/// parse_scenario to an equivalent scenario.
std::string write_scenario(const Scenario& scenario);

/// Atomic write (temp file + rename). Throws IoError.
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// Names of the bundled presets, in listing order.
std::vector<std::string> preset_names();

/// Bundled preset by name. Throws ValidationError for an unknown name.
Scenario load_preset(std::string_view name);

/// Source text of a bundled preset, byte-identical to the canonical example
/// file shipped under scenarios/. Throws ValidationError for unknown names.
std::string preset_text(std::string_view name);

}  // namespace formtrack
