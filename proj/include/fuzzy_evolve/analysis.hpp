#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fuzzy_evolve/grrv.hpp"
#include "fuzzy_evolve/montecarlo.hpp"
#include "fuzzy_evolve/scenario.hpp"

namespace fuzzy_evolve {

/// Confidence intervals and GRRV rankings for every row of a tally. Terms
/// never observed enter as the degenerate interval [0, 0].
struct EnsembleDecision {
  TallyTable tally;
  std::vector<std::vector<ConfidenceInterval>> intervals;  // [row][term]
  std::vector<RankedDecision> rankings;                    // [row]

  /// Ranking that applies to agent i (row 0 in global mode).
  const RankedDecision& for_agent(AgentIndex i) const;
  Term chosen(AgentIndex i) const { return for_agent(i).chosen; }
};

EnsembleDecision decide(const TallyTable& tally, double z);

/// Tally in the model's default mode, then decide.
EnsembleDecision decide(const EnsembleResult& result);

struct Partition {
  std::vector<Term> terms;                      // one per block
  std::vector<std::vector<AgentIndex>> blocks;  // agents, ascending; blocks ordered by term
};

Partition partition_by_term(std::span<const Term> opinions);

/// Agents grouped by the term their ranking picks.
Partition decision_partition(const EnsembleDecision& decision, std::size_t agents);

struct ClusterSummary {
  std::vector<Partition> per_trial;
  std::map<std::size_t, std::size_t> cluster_counts;  // #clusters -> #trials
  /// Most frequent block structure (term labels ignored), blocks ordered by
  /// smallest member. Ties go to the lexicographically smallest structure.
  std::vector<std::vector<AgentIndex>> modal_blocks;
  std::size_t modal_frequency = 0;
  std::vector<AgentIndex> frozen_agents;  // never changed in any round of any trial
  std::vector<double> frozen_fraction;    // per agent, over trials
  std::size_t echo_chamber_trials = 0;
};

ClusterSummary cluster_summary(const EnsembleResult& result);

struct Perturbation {
  enum class Kind { InitialOpinion, Threshold };

  Kind kind = Kind::InitialOpinion;
  AgentIndex agent = 0;  // zero-based
  double value = 0.0;    // term index or threshold

  static Perturbation opinion(AgentIndex agent, int term) {
    return {Kind::InitialOpinion, agent, static_cast<double>(term)};
  }
  static Perturbation threshold(AgentIndex agent, double eps) { return {Kind::Threshold, agent, eps}; }
};

/// Throws DomainError when a target agent does not exist, the new value is
/// invalid, or a threshold change is applied to a model without per-agent
/// thresholds (prrlem-hehk, classic-hk).
Scenario apply_perturbations(const Scenario& scenario, std::span<const Perturbation> perturbations);

struct ComparisonColumn {
  std::string label;
  Scenario scenario;
  EnsembleDecision decision;
  LeaderFrequency leaders;
  ClusterSummary clusters;
};

struct ComparisonReport {
  std::vector<ComparisonColumn> columns;
  /// agreement[a][b]: fraction of agents whose chosen terms coincide.
  std::vector<std::vector<double>> agreement;
  /// rep_deltas[c][i][ξ] = Rep_c(i, ξ) - Rep_0(i, ξ).
  std::vector<std::vector<std::vector<double>>> rep_deltas;
};

ComparisonColumn evaluate_column(std::string label, const Scenario& scenario,
                                 const EnsembleOptions& options);

ComparisonReport compare_columns(std::vector<ComparisonColumn> columns);

/// One column per model; prrlem-hohk and classic-hk get one column per value
/// of `eps_grid` when it is non-empty. Every column reuses the base seed and
/// initial opinions. Throws ScenarioError for an HK model with no usable
/// thresholds.
ComparisonReport model_compare(const Scenario& base, std::span<const ModelKind> models,
                               std::span<const double> eps_grid, const EnsembleOptions& options = {});

struct RobustnessVerdict {
  std::vector<AgentIndex> targeted;
  std::vector<AgentIndex> changed_agents;         // chosen term differs
  std::vector<AgentIndex> winner_changed_agents;  // winner set differs
  std::vector<Term> baseline_terms;               // distinct chosen terms
  std::vector<Term> perturbed_terms;
  std::vector<Term> added_terms;
  std::vector<Term> removed_terms;
  bool chosen_unchanged = true;        // every agent keeps its chosen term
  bool outcome_terms_unchanged = true; // same set of chosen terms
  bool untargeted_unchanged = true;    // agents not named by a perturbation keep theirs
  double max_abs_rep_delta = 0.0;
};

struct RobustnessReport {
  std::vector<Perturbation> perturbations;
  ComparisonReport comparison;  // columns: baseline, perturbed
  RobustnessVerdict verdict;
};

/// Baseline and perturbed ensembles share the master seed.
RobustnessReport robustness_compare(const Scenario& scenario,
                                    std::span<const Perturbation> perturbations,
                                    const EnsembleOptions& options = {});

}  // namespace fuzzy_evolve
