#include "fuzzy_evolve/scenario.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "fuzzy_evolve/errors.hpp"

namespace fuzzy_evolve {

namespace {

constexpr std::array<std::pair<ModelKind, std::string_view>, 6> kModelNames{{
    {ModelKind::PrrlemDeGroot, "prrlem-degroot"},
    {ModelKind::PrrlemHoHK, "prrlem-hohk"},
    {ModelKind::PrrlemHeHK, "prrlem-hehk"},
    {ModelKind::ClassicDeGrootEqual, "classic-degroot-equal"},
    {ModelKind::ClassicDeGrootDistance, "classic-degroot-distance"},
    {ModelKind::ClassicHK, "classic-hk"},
}};

LinguisticTermSet make_scale(const ScenarioParams& p) {
  try {
    return LinguisticTermSet(p.phi, p.base);
  } catch (const DomainError& e) {
    throw ScenarioError(p.phi < 1 ? "phi" : "base_a", e.what());
  }
}

}  // namespace

std::string_view to_string(ModelKind m) {
  for (const auto& [kind, name] : kModelNames) {
    if (kind == m) return name;
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (const auto& [kind, n] : kModelNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

bool is_hk(ModelKind m) noexcept {
  return m == ModelKind::PrrlemHoHK || m == ModelKind::PrrlemHeHK || m == ModelKind::ClassicHK;
}

bool is_prrlem(ModelKind m) noexcept {
  return m == ModelKind::PrrlemDeGroot || m == ModelKind::PrrlemHoHK ||
         m == ModelKind::PrrlemHeHK;
}

Scenario::Scenario(ScenarioParams params) : params_(std::move(params)), scale_(make_scale(params_)) {
  const auto& p = params_;
  if (p.initial_opinions.size() < 2) {
    throw ScenarioError("initial_opinions", "at least two agents are required, got " +
                                                std::to_string(p.initial_opinions.size()));
  }
  if (p.trials == 0) throw ScenarioError("trials", "must be positive");
  if (p.iterations == 0) throw ScenarioError("iterations", "must be positive");
  if (!std::isfinite(p.z_value) || !(p.z_value > 0.0)) {
    throw ScenarioError("z_value", "must be a finite value > 0");
  }

  initial_.reserve(p.initial_opinions.size());
  for (std::size_t i = 0; i < p.initial_opinions.size(); ++i) {
    const Term t{p.initial_opinions[i]};
    if (!scale_.contains(t)) {
      throw ScenarioError("initial_opinions[" + std::to_string(i) + "]",
                          "term index " + std::to_string(t.index) + " outside [0, " +
                              std::to_string(scale_.cardinality() - 1) + "]");
    }
    initial_.push_back(t);
  }

  const std::size_t n = initial_.size();
  if (!is_hk(p.model)) {
    if (!p.thresholds.empty()) {
      throw ScenarioError("thresholds", "model " + std::string(to_string(p.model)) +
                                            " does not use confidence thresholds");
    }
    return;
  }
  if (p.thresholds.empty()) {
    throw ScenarioError("thresholds",
                        "model " + std::string(to_string(p.model)) + " requires confidence thresholds");
  }
  if (p.model == ModelKind::PrrlemHoHK && !p.thresholds_scalar) {
    throw ScenarioError("thresholds", "prrlem-hohk takes a single shared threshold");
  }
  if (p.model == ModelKind::PrrlemHeHK && p.thresholds_scalar) {
    throw ScenarioError("thresholds", "prrlem-hehk takes one threshold per agent");
  }
  if (p.thresholds_scalar && p.thresholds.size() != 1) {
    throw ScenarioError("thresholds", "scalar threshold expected");
  }
  if (!p.thresholds_scalar && p.thresholds.size() != n) {
    throw ScenarioError("thresholds", "expected " + std::to_string(n) + " values, got " +
                                          std::to_string(p.thresholds.size()));
  }
  for (std::size_t i = 0; i < p.thresholds.size(); ++i) {
    const double e = p.thresholds[i];
    if (!std::isfinite(e) || e < 0.0 || e > 1.0) {
      throw ScenarioError(p.thresholds_scalar ? "thresholds" : "thresholds[" + std::to_string(i) + "]",
                          "threshold must lie in [0, 1]");
    }
  }
  Thresholds th;
  th.homogeneous = p.thresholds_scalar;
  th.per_agent = p.thresholds_scalar ? std::vector<double>(n, p.thresholds.front()) : p.thresholds;
  thresholds_ = std::move(th);
}

}  // namespace fuzzy_evolve
