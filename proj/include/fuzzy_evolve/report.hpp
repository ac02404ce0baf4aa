#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fuzzy_evolve/analysis.hpp"
#include "fuzzy_evolve/dynamics.hpp"

namespace fuzzy_evolve {

inline constexpr const char* kToolName = "fuzzy-evolve";
std::string tool_version();

/// One evaluated scenario plus, optionally, its full trial traces.
struct RunOutput {
  ComparisonColumn column;
  std::vector<TrialTrace> traces;
};

// Report documents. Reals are written at full precision; the "summary" block
// is the only place where values are rounded (three decimals).
nlohmann::json run_report(const std::string& source, const std::vector<RunOutput>& runs);
nlohmann::json compare_report(const std::string& source, const ComparisonReport& report);
nlohmann::json robustness_report(const std::string& source, const RobustnessReport& report);

/// CSV rendering of any report above: one table per section, each preceded
/// by a header line starting with '#'. Numbers are identical to the JSON ones.
std::string report_to_csv(const nlohmann::json& report);

std::string agent_label(std::size_t agent);  // zero-based -> "e_1"

}  // namespace fuzzy_evolve
