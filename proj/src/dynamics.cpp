#include "fuzzy_evolve/dynamics.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fuzzy_evolve {

namespace {

std::vector<AgentIndex> all_agents(std::size_t n) {
  std::vector<AgentIndex> v(n);
  std::iota(v.begin(), v.end(), AgentIndex{0});
  return v;
}

TrialState quantized(const LinguisticTermSet& scale, const std::vector<double>& values,
                     std::size_t round) {
  std::vector<Term> terms;
  terms.reserve(values.size());
  for (double v : values) terms.push_back(scale.to_linguistic(v));
  return make_state(scale, std::move(terms), round);
}

}  // namespace

TrialState make_state(const LinguisticTermSet& scale, std::vector<Term> opinions, std::size_t round) {
  TrialState s;
  s.round = round;
  s.numeric.reserve(opinions.size());
  for (Term t : opinions) s.numeric.push_back(scale.to_numeric(t));
  s.opinions = std::move(opinions);
  return s;
}

LeaderDraw draw_leader(RngStream& rng, std::span<const AgentIndex> candidates) {
  if (candidates.empty()) {
    throw std::logic_error("draw_leader: empty candidate set");
  }
  LeaderDraw d;
  d.leader = candidates[rng.uniform_index(candidates.size())];
  d.weight = candidates.size() == 1 ? 1.0 : rng.uniform01();
  return d;
}

std::vector<double> follower_weights(const LeaderDraw& draw, std::span<const AgentIndex> members) {
  std::vector<double> w(members.size(), 0.0);
  if (members.size() == 1) {
    w[0] = 1.0;
    return w;
  }
  const double follower = (1.0 - draw.weight) / static_cast<double>(members.size() - 1);
  for (std::size_t k = 0; k < members.size(); ++k) {
    w[k] = members[k] == draw.leader ? draw.weight : follower;
  }
  return w;
}

double leader_weighted_value(std::span<const double> numeric, std::span<const AgentIndex> members,
                             const LeaderDraw& draw) {
  if (members.size() == 1) return numeric[members[0]];
  const double follower = (1.0 - draw.weight) / static_cast<double>(members.size() - 1);
  double others = 0.0;
  for (AgentIndex k : members) {
    if (k != draw.leader) others += numeric[k];
  }
  return draw.weight * numeric[draw.leader] + follower * others;
}

ConfidenceSet confidence_set(std::span<const double> numeric, AgentIndex owner, double eps) {
  ConfidenceSet cs;
  cs.owner = owner;
  const double yi = numeric[owner];
  for (AgentIndex j = 0; j < numeric.size(); ++j) {
    if (j == owner || std::abs(yi - numeric[j]) <= eps) cs.members.push_back(j);
  }
  return cs;
}

TrialState prrlem_degroot_round(const LinguisticTermSet& scale, const TrialState& state,
                                const LeaderDraw& draw) {
  const auto members = all_agents(state.size());
  const double v = leader_weighted_value(state.numeric, members, draw);
  const Term t = scale.to_linguistic(v);
  return make_state(scale, std::vector<Term>(state.size(), t), state.round + 1);
}

TrialState prrlem_hk_round(const LinguisticTermSet& scale, const TrialState& state,
                           std::span<const double> thresholds, RngStream& rng,
                           std::vector<LeaderEvent>* log) {
  const std::size_t n = state.size();
  // Sorted member list -> agents owning exactly that set. std::map iterates
  // keys lexicographically, which fixes the draw order.
  std::map<std::vector<AgentIndex>, std::vector<AgentIndex>> groups;
  for (AgentIndex i = 0; i < n; ++i) {
    groups[confidence_set(state.numeric, i, thresholds[i]).members].push_back(i);
  }

  std::vector<double> next(n, 0.0);
  for (const auto& [members, owners] : groups) {
    const LeaderDraw draw = draw_leader(rng, members);
    if (log) log->push_back({state.round, draw.leader, draw.weight, members.size()});
    const double v = leader_weighted_value(state.numeric, members, draw);
    for (AgentIndex i : owners) next[i] = v;
  }
  return quantized(scale, next, state.round + 1);
}

TrialState classic_degroot_round(const LinguisticTermSet& scale, const TrialState& state,
                                 DeGrootWeights mode) {
  const std::size_t n = state.size();
  std::vector<double> next(n, 0.0);
  if (mode == DeGrootWeights::Equal) {
    const double mean =
        std::accumulate(state.numeric.begin(), state.numeric.end(), 0.0) / static_cast<double>(n);
    next.assign(n, mean);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double num = 0.0;
      double den = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double w = std::exp(-std::abs(state.numeric[i] - state.numeric[k]));
        num += w * state.numeric[k];
        den += w;
      }
      next[i] = num / den;
    }
  }
  return quantized(scale, next, state.round + 1);
}

TrialState classic_hk_round(const LinguisticTermSet& scale, const TrialState& state,
                            std::span<const double> thresholds) {
  const std::size_t n = state.size();
  std::vector<double> next(n, 0.0);
  for (AgentIndex i = 0; i < n; ++i) {
    const auto cs = confidence_set(state.numeric, i, thresholds[i]);
    double sum = 0.0;
    for (AgentIndex k : cs.members) sum += state.numeric[k];
    next[i] = sum / static_cast<double>(cs.members.size());
  }
  return quantized(scale, next, state.round + 1);
}

TrialTrace run_trial(const Scenario& scenario, std::size_t trial_index) {
  const auto& scale = scenario.scale();
  RngStream rng = RngStream::for_trial(scenario.master_seed(), trial_index);

  TrialTrace trace;
  trace.trial_index = trial_index;
  trace.snapshots.reserve(scenario.iterations() + 1);

  TrialState state = make_state(scale, scenario.initial_opinions(), 1);
  trace.snapshots.push_back(state.opinions);

  const auto everyone = all_agents(scenario.agents());
  std::span<const double> eps;
  if (scenario.thresholds()) eps = scenario.thresholds()->per_agent;

  for (std::size_t t = 0; t < scenario.iterations(); ++t) {
    switch (scenario.model()) {
      case ModelKind::PrrlemDeGroot: {
        const LeaderDraw d = draw_leader(rng, everyone);
        trace.leaders.push_back({state.round, d.leader, d.weight, everyone.size()});
        state = prrlem_degroot_round(scale, state, d);
        break;
      }
      case ModelKind::PrrlemHoHK:
      case ModelKind::PrrlemHeHK:
        state = prrlem_hk_round(scale, state, eps, rng, &trace.leaders);
        break;
      case ModelKind::ClassicDeGrootEqual:
        state = classic_degroot_round(scale, state, DeGrootWeights::Equal);
        break;
      case ModelKind::ClassicDeGrootDistance:
        state = classic_degroot_round(scale, state, DeGrootWeights::Distance);
        break;
      case ModelKind::ClassicHK:
        state = classic_hk_round(scale, state, eps);
        break;
    }
    trace.snapshots.push_back(state.opinions);
  }
  trace.final_opinions = state.opinions;
  return trace;
}

}  // namespace fuzzy_evolve
