#include "fuzzy_evolve/scenario_file.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "fuzzy_evolve/errors.hpp"

namespace fuzzy_evolve {

namespace {

#include "bundled_scenarios.inc"

using nlohmann::json;

constexpr std::array<std::string_view, 13> kKnownKeys{
    "name",      "description", "model",      "agents",           "trials",
    "iterations", "phi",        "base_a",     "z_value",          "initial_opinions",
    "thresholds", "master_seed", "variants"};

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

template <typename T>
T get_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(field, "unexpected value " + j.dump());
  }
}

std::size_t get_positive(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() <= 0) {
    throw ScenarioError(field, "must be a positive integer, got " + j.dump());
  }
  return j.get<std::size_t>();
}

double get_real(const json& j, const std::string& field) {
  if (!j.is_number()) throw ScenarioError(field, "must be a number, got " + j.dump());
  return j.get<double>();
}

void check_keys(const json& obj, const std::string& prefix, bool allow_variants) {
  if (!obj.is_object()) throw ScenarioError(prefix, "expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto k : kKnownKeys) known = known || k == key;
    if (!known || (!allow_variants && key == "variants")) {
      throw ScenarioError(prefix + key, "unknown key");
    }
  }
}

// Applies every key present in `obj` to `p`; `prefix` addresses errors.
void apply_keys(const json& obj, const std::string& prefix, ScenarioParams& p,
                std::optional<std::size_t>& declared_agents, bool& seed_given) {
  if (auto it = obj.find("name"); it != obj.end()) p.name = get_as<std::string>(*it, prefix + "name");
  if (auto it = obj.find("description"); it != obj.end()) {
    p.description = get_as<std::string>(*it, prefix + "description");
  }
  if (auto it = obj.find("model"); it != obj.end()) {
    const auto name = get_as<std::string>(*it, prefix + "model");
    const auto kind = parse_model_kind(name);
    if (!kind) throw ScenarioError(prefix + "model", "unknown model '" + name + "'");
    p.model = *kind;
  }
  if (auto it = obj.find("agents"); it != obj.end()) declared_agents = get_positive(*it, prefix + "agents");
  if (auto it = obj.find("trials"); it != obj.end()) p.trials = get_positive(*it, prefix + "trials");
  if (auto it = obj.find("iterations"); it != obj.end()) {
    p.iterations = get_positive(*it, prefix + "iterations");
  }
  if (auto it = obj.find("phi"); it != obj.end()) {
    if (!it->is_number_integer()) throw ScenarioError(prefix + "phi", "must be an integer");
    p.phi = it->get<int>();
  }
  if (auto it = obj.find("base_a"); it != obj.end()) p.base = get_real(*it, prefix + "base_a");
  if (auto it = obj.find("z_value"); it != obj.end()) p.z_value = get_real(*it, prefix + "z_value");
  if (auto it = obj.find("initial_opinions"); it != obj.end()) {
    if (!it->is_array()) throw ScenarioError(prefix + "initial_opinions", "must be a list of term indices");
    p.initial_opinions.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& v = (*it)[i];
      const std::string field = prefix + "initial_opinions[" + std::to_string(i) + "]";
      if (!v.is_number_integer()) throw ScenarioError(field, "must be an integer term index");
      p.initial_opinions.push_back(v.get<int>());
    }
  }
  if (auto it = obj.find("thresholds"); it != obj.end()) {
    p.thresholds.clear();
    if (it->is_null()) {
      p.thresholds_scalar = true;
    } else if (it->is_number()) {
      p.thresholds = {it->get<double>()};
      p.thresholds_scalar = true;
    } else if (it->is_array()) {
      for (std::size_t i = 0; i < it->size(); ++i) {
        p.thresholds.push_back(get_real((*it)[i], prefix + "thresholds[" + std::to_string(i) + "]"));
      }
      p.thresholds_scalar = false;
    } else {
      throw ScenarioError(prefix + "thresholds", "must be a number or a list of numbers");
    }
  }
  if (auto it = obj.find("master_seed"); it != obj.end()) {
    if (!it->is_number_unsigned()) {
      throw ScenarioError(prefix + "master_seed", "must be an unsigned 64-bit integer");
    }
    p.master_seed = it->get<std::uint64_t>();
    seed_given = true;
  }
}

Scenario build(ScenarioParams p, std::optional<std::size_t> declared_agents, const std::string& prefix) {
  if (declared_agents && *declared_agents != p.initial_opinions.size()) {
    throw ScenarioError(prefix + "agents", "declares " + std::to_string(*declared_agents) +
                                               " agents but initial_opinions has " +
                                               std::to_string(p.initial_opinions.size()));
  }
  try {
    return Scenario(std::move(p));
  } catch (const ScenarioError& e) {
    if (prefix.empty()) throw;
    // Re-address the error to the variant it came from.
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw ScenarioError(prefix + e.field(), colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
}

}  // namespace

ScenarioSuite parse_scenario_document(std::string_view text, std::optional<std::uint64_t> seed_fallback) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError("", "malformed scenario JSON at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  check_keys(doc, "", true);

  ScenarioParams base;
  std::optional<std::size_t> declared;
  bool seed_given = false;
  apply_keys(doc, "", base, declared, seed_given);
  if (!seed_given) base.master_seed = seed_fallback.value_or(1);

  ScenarioSuite suite;
  suite.name = base.name;

  auto variants = doc.find("variants");
  if (variants == doc.end()) {
    suite.scenarios.push_back(build(base, declared, ""));
    return suite;
  }
  if (!variants->is_array() || variants->empty()) {
    throw ScenarioError("variants", "must be a non-empty list of objects");
  }
  for (std::size_t v = 0; v < variants->size(); ++v) {
    const std::string prefix = "variants[" + std::to_string(v) + "].";
    const auto& obj = (*variants)[v];
    check_keys(obj, prefix, false);
    ScenarioParams p = base;
    auto d = declared;
    bool given = false;
    apply_keys(obj, prefix, p, d, given);
    suite.scenarios.push_back(build(std::move(p), d, prefix));
  }
  return suite;
}

ScenarioSuite load_scenario_file(const std::filesystem::path& path,
                                 std::optional<std::uint64_t> seed_fallback) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return parse_scenario_document(buf.str(), seed_fallback);
}

nlohmann::json scenario_to_json(const Scenario& scenario) {
  const auto& p = scenario.params();
  json j;
  j["name"] = p.name;
  if (!p.description.empty()) j["description"] = p.description;
  j["model"] = std::string(to_string(p.model));
  j["agents"] = scenario.agents();
  j["trials"] = p.trials;
  j["iterations"] = p.iterations;
  j["phi"] = p.phi;
  j["base_a"] = p.base;
  j["z_value"] = p.z_value;
  j["initial_opinions"] = p.initial_opinions;
  if (!p.thresholds.empty()) {
    if (p.thresholds_scalar) {
      j["thresholds"] = p.thresholds.front();
    } else {
      j["thresholds"] = p.thresholds;
    }
  }
  j["master_seed"] = p.master_seed;
  return j;
}

std::vector<std::string> bundled_scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : kBundledScenarios) names.emplace_back(name);
  return names;
}

std::optional<std::string_view> bundled_scenario(std::string_view name) {
  for (const auto& [n, text] : kBundledScenarios) {
    if (n == name) return text;
  }
  return std::nullopt;
}

}  // namespace fuzzy_evolve
