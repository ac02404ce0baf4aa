#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzy_evolve/linguistic_scale.hpp"

namespace fuzzy_evolve {

enum class ModelKind {
  PrrlemDeGroot,
  PrrlemHoHK,
  PrrlemHeHK,
  ClassicDeGrootEqual,
  ClassicDeGrootDistance,
  ClassicHK,
};

std::string_view to_string(ModelKind m);
std::optional<ModelKind> parse_model_kind(std::string_view name);

bool is_hk(ModelKind m) noexcept;
/// True for models that draw leaders (and so consume randomness).
bool is_prrlem(ModelKind m) noexcept;

/// Confidence thresholds ε_i. `homogeneous` records whether the source gave a
/// single shared value; `per_agent` is always expanded to N entries.
struct Thresholds {
  std::vector<double> per_agent;
  bool homogeneous = true;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

inline constexpr double kDefaultZ = 1.96;

/// Plain aggregate used to build a Scenario. Nothing here is validated.
struct ScenarioParams {
  std::string name;
  std::string description;
  ModelKind model = ModelKind::PrrlemDeGroot;
  std::size_t trials = 1000;
  std::size_t iterations = 9;
  int phi = 3;
  double base = kDefaultBase;
  double z_value = kDefaultZ;
  std::vector<int> initial_opinions;
  /// Either one value (homogeneous) or one per agent. Empty means absent.
  std::vector<double> thresholds;
  bool thresholds_scalar = true;
  std::uint64_t master_seed = 1;

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

/// A validated, immutable experiment description.
///
/// Construction throws ScenarioError naming the offending field when:
///  - fewer than two agents are given, or trials/iterations are zero;
///  - an initial opinion is not a valid term index for the scale;
///  - thresholds are given for a non-HK model or missing for an HK model;
///  - prrlem-hohk gets a per-agent list, or prrlem-hehk a single value;
///  - a threshold lies outside [0, 1], or z_value is not positive.
class Scenario {
 public:
  explicit Scenario(ScenarioParams params);

  const ScenarioParams& params() const noexcept { return params_; }
  const std::string& name() const noexcept { return params_.name; }
  ModelKind model() const noexcept { return params_.model; }
  std::size_t agents() const noexcept { return initial_.size(); }
  std::size_t trials() const noexcept { return params_.trials; }
  std::size_t iterations() const noexcept { return params_.iterations; }
  double z_value() const noexcept { return params_.z_value; }
  std::uint64_t master_seed() const noexcept { return params_.master_seed; }
  const LinguisticTermSet& scale() const noexcept { return scale_; }
  const std::vector<Term>& initial_opinions() const noexcept { return initial_; }
  /// Present iff the model is an HK variant.
  const std::optional<Thresholds>& thresholds() const noexcept { return thresholds_; }

 private:
  ScenarioParams params_;
  LinguisticTermSet scale_;
  std::vector<Term> initial_;
  std::optional<Thresholds> thresholds_;
};

}  // namespace fuzzy_evolve
