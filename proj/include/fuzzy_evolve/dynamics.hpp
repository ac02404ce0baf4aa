#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fuzzy_evolve/linguistic_scale.hpp"
#include "fuzzy_evolve/rng.hpp"
#include "fuzzy_evolve/scenario.hpp"

namespace fuzzy_evolve {

using AgentIndex = std::size_t;

/// Linguistic opinions of all agents at round `round`, with their numeric
/// images. `numeric[i] == scale.to_numeric(opinions[i])` always holds.
struct TrialState {
  std::size_t round = 1;
  std::vector<Term> opinions;
  std::vector<double> numeric;

  std::size_t size() const noexcept { return opinions.size(); }
};

TrialState make_state(const LinguisticTermSet& scale, std::vector<Term> opinions,
                      std::size_t round = 1);

struct LeaderDraw {
  AgentIndex leader = 0;
  double weight = 1.0;
};

/// Agents within ε of `owner` (closed ball), sorted ascending. Always
/// contains the owner.
struct ConfidenceSet {
  AgentIndex owner = 0;
  std::vector<AgentIndex> members;
};

struct LeaderEvent {
  std::size_t round = 0;
  AgentIndex leader = 0;
  double weight = 1.0;
  std::size_t group_size = 0;

  friend bool operator==(const LeaderEvent&, const LeaderEvent&) = default;
};

struct TrialTrace {
  std::size_t trial_index = 0;
  /// iterations + 1 entries; snapshots.front() is the initial state.
  std::vector<std::vector<Term>> snapshots;
  std::vector<LeaderEvent> leaders;
  std::vector<Term> final_opinions;

  friend bool operator==(const TrialTrace&, const TrialTrace&) = default;
};

/// Picks a leader uniformly from `candidates` (one draw), then its weight
/// ω ~ U[0,1) (a second draw). A lone candidate gets ω = 1 and the weight
/// draw is skipped. Throws std::logic_error on an empty candidate list.
LeaderDraw draw_leader(RngStream& rng, std::span<const AgentIndex> candidates);

/// Weights aligned with `members`: ω for the leader, (1-ω)/(n-1) for the rest.
std::vector<double> follower_weights(const LeaderDraw& draw, std::span<const AgentIndex> members);

/// ω y_leader + Σ_{k≠leader} (1-ω)/(n-1) y_k over `members`.
double leader_weighted_value(std::span<const double> numeric, std::span<const AgentIndex> members,
                             const LeaderDraw& draw);

ConfidenceSet confidence_set(std::span<const double> numeric, AgentIndex owner, double eps);

/// One shared leader for all agents. Every agent receives the same update
/// value, so all agents hold one term afterwards.
TrialState prrlem_degroot_round(const LinguisticTermSet& scale, const TrialState& state,
                                const LeaderDraw& draw);

/// Bounded-confidence round with per-set leaders.
///
/// All N confidence sets are computed on the current numeric opinions and
/// agents are grouped by identical member sets. Groups are visited in
/// lexicographic order of their sorted member lists (i.e. by smallest member
/// first) and each draws one LeaderDraw; every agent of a group takes the
/// group's leader-weighted value. One LeaderEvent per group is appended to
/// `log` when given.
TrialState prrlem_hk_round(const LinguisticTermSet& scale, const TrialState& state,
                           std::span<const double> thresholds, RngStream& rng,
                           std::vector<LeaderEvent>* log = nullptr);

enum class DeGrootWeights { Equal, Distance };

/// Deterministic DeGroot step. Equal: 1/N each. Distance: agent i weights
/// agent k by exp(-|y_i - y_k|), normalised.
TrialState classic_degroot_round(const LinguisticTermSet& scale, const TrialState& state,
                                 DeGrootWeights mode);

/// Deterministic HK step: unweighted mean over each agent's confidence set.
TrialState classic_hk_round(const LinguisticTermSet& scale, const TrialState& state,
                            std::span<const double> thresholds);

/// Runs `scenario.iterations()` rounds of the scenario's model from its
/// initial opinions with the stream derived from (master_seed, trial_index).
TrialTrace run_trial(const Scenario& scenario, std::size_t trial_index);

}  // namespace fuzzy_evolve
