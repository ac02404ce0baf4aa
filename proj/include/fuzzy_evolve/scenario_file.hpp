#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fuzzy_evolve/scenario.hpp"

namespace fuzzy_evolve {

// JSON scenario documents.
//
// A document is one object with the keys
//
//   name, description        strings, optional
//   model                    prrlem-degroot | prrlem-hohk | prrlem-hehk |
//                            classic-degroot-equal | classic-degroot-distance |
//                            classic-hk
//   agents                   optional; must equal the number of initial opinions
//   trials, iterations       positive integers (M, T)
//   phi, base_a              scale parameters (Φ, a)
//   z_value                  confidence coefficient, default 1.96
//   initial_opinions         term indices 0..2Φ, one per agent
//   thresholds               number (shared ε) or list (ε_i per agent)
//   master_seed              unsigned 64-bit integer, optional
//   variants                 optional list of objects overriding any of the
//                            keys above; each variant is one scenario
//
// Unknown keys are rejected. Errors carry the JSON path of the bad field, and
// syntax errors carry line and column.

struct ScenarioSuite {
  std::string name;
  std::vector<Scenario> scenarios;
};

/// `seed_fallback` is used when the document has no master_seed; when that is
/// also absent the seed defaults to 1.
ScenarioSuite parse_scenario_document(std::string_view text,
                                      std::optional<std::uint64_t> seed_fallback = std::nullopt);

/// Throws IoError when the file cannot be read.
ScenarioSuite load_scenario_file(const std::filesystem::path& path,
                                 std::optional<std::uint64_t> seed_fallback = std::nullopt);

/// Full echo of a scenario; feeding it back through parse_scenario_document
/// yields an identical scenario.
nlohmann::json scenario_to_json(const Scenario& scenario);

std::vector<std::string> bundled_scenario_names();
std::optional<std::string_view> bundled_scenario(std::string_view name);

}  // namespace fuzzy_evolve
