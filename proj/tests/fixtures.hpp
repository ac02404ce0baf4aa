#pragma once

#include <vector>

#include "fuzzy_evolve/scenario.hpp"

namespace fixtures {

inline const std::vector<int> kExample1Opinions{1, 4, 1, 2, 1, 3, 4, 1, 5, 1, 0, 6, 3, 2, 5};
inline const std::vector<double> kExample3Thresholds{0.2, 0.5, 0.3, 0.4, 0.2, 0.1, 0.9, 0.6,
                                                     0.5, 0.3, 0.3, 0.1, 0.8, 0.4, 0.2};

inline fuzzy_evolve::ScenarioParams example_params(fuzzy_evolve::ModelKind model,
                                                   std::vector<double> thresholds = {},
                                                   bool scalar = true) {
  fuzzy_evolve::ScenarioParams p;
  p.name = "fixture";
  p.model = model;
  p.trials = 1000;
  p.iterations = 9;
  p.phi = 3;
  p.base = 1.37;
  p.initial_opinions = kExample1Opinions;
  p.thresholds = std::move(thresholds);
  p.thresholds_scalar = scalar;
  p.master_seed = 2024;
  return p;
}

inline fuzzy_evolve::Scenario example1() {
  return fuzzy_evolve::Scenario(example_params(fuzzy_evolve::ModelKind::PrrlemDeGroot));
}

inline fuzzy_evolve::Scenario example2(double eps = 0.21) {
  return fuzzy_evolve::Scenario(example_params(fuzzy_evolve::ModelKind::PrrlemHoHK, {eps}));
}

inline fuzzy_evolve::Scenario example3() {
  return fuzzy_evolve::Scenario(
      example_params(fuzzy_evolve::ModelKind::PrrlemHeHK, kExample3Thresholds, false));
}

}  // namespace fixtures
