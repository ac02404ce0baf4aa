#include "fuzzy_evolve/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "fuzzy_evolve/errors.hpp"

namespace fuzzy_evolve {

namespace {

std::string format_eps(double eps) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, eps);
  return std::string(buf, end);
}

std::vector<Term> distinct_chosen(const EnsembleDecision& d, std::size_t agents) {
  std::set<Term> s;
  for (AgentIndex i = 0; i < agents; ++i) s.insert(d.chosen(i));
  return {s.begin(), s.end()};
}

}  // namespace

const RankedDecision& EnsembleDecision::for_agent(AgentIndex i) const {
  if (i >= tally.agents()) throw std::out_of_range("agent index " + std::to_string(i) + " out of range");
  return tally.mode() == TallyMode::Global ? rankings.front() : rankings.at(i);
}

EnsembleDecision decide(const TallyTable& tally, double z) {
  EnsembleDecision d{tally, {}, {}};
  std::vector<Term> labels;
  for (int xi = 0; xi < tally.cardinality(); ++xi) labels.push_back(Term{xi});

  for (std::size_t r = 0; r < tally.rows(); ++r) {
    std::vector<ConfidenceInterval> cis;
    std::vector<Interval> intervals;
    for (int xi = 0; xi < tally.cardinality(); ++xi) {
      // p = 0 collapses to [0, 0], which is how unobserved terms are ranked.
      const auto ci = confidence_interval(tally.proportion(r, xi), tally.sample_size(), z);
      cis.push_back(ci);
      intervals.push_back(ci.interval());
    }
    d.intervals.push_back(std::move(cis));
    d.rankings.push_back(rank(intervals, labels));
  }
  return d;
}

EnsembleDecision decide(const EnsembleResult& result) {
  return decide(tally(result, default_tally_mode(result.scenario.model())),
                result.scenario.z_value());
}

Partition partition_by_term(std::span<const Term> opinions) {
  std::map<Term, std::vector<AgentIndex>> by_term;
  for (AgentIndex i = 0; i < opinions.size(); ++i) by_term[opinions[i]].push_back(i);
  Partition p;
  for (auto& [t, agents] : by_term) {
    p.terms.push_back(t);
    p.blocks.push_back(std::move(agents));
  }
  return p;
}

Partition decision_partition(const EnsembleDecision& decision, std::size_t agents) {
  std::vector<Term> chosen;
  for (AgentIndex i = 0; i < agents; ++i) chosen.push_back(decision.chosen(i));
  return partition_by_term(chosen);
}

ClusterSummary cluster_summary(const EnsembleResult& result) {
  const std::size_t n = result.scenario.agents();
  ClusterSummary s;
  s.frozen_fraction.assign(n, 0.0);
  std::map<std::vector<std::vector<AgentIndex>>, std::size_t> structures;

  for (const auto& trial : result.trials) {
    Partition p = partition_by_term(trial.final_opinions);
    ++s.cluster_counts[p.blocks.size()];

    auto blocks = p.blocks;
    std::sort(blocks.begin(), blocks.end());
    ++structures[blocks];

    for (AgentIndex i = 0; i < n; ++i) {
      if (trial.frozen[i]) s.frozen_fraction[i] += 1.0;
    }
    if (trial.echo_chamber) ++s.echo_chamber_trials;
    s.per_trial.push_back(std::move(p));
  }

  const double m = static_cast<double>(result.trials.size());
  for (AgentIndex i = 0; i < n; ++i) {
    if (!result.trials.empty() && s.frozen_fraction[i] == m) s.frozen_agents.push_back(i);
    if (m > 0) s.frozen_fraction[i] /= m;
  }
  for (const auto& [blocks, count] : structures) {
    if (count > s.modal_frequency) {
      s.modal_frequency = count;
      s.modal_blocks = blocks;
    }
  }
  return s;
}

Scenario apply_perturbations(const Scenario& scenario, std::span<const Perturbation> perturbations) {
  ScenarioParams p = scenario.params();
  const std::size_t n = scenario.agents();
  for (const auto& pert : perturbations) {
    if (pert.agent >= n) {
      throw DomainError("perturbation targets agent " + std::to_string(pert.agent + 1) +
                        " but the scenario has " + std::to_string(n) + " agents");
    }
    if (pert.kind == Perturbation::Kind::InitialOpinion) {
      const double v = pert.value;
      if (v != std::floor(v) || !scenario.scale().contains(Term{static_cast<int>(v)})) {
        throw DomainError("perturbation opinion " + format_eps(v) + " is not a term index in [0, " +
                          std::to_string(scenario.scale().cardinality() - 1) + "]");
      }
      p.initial_opinions[pert.agent] = static_cast<int>(v);
    } else {
      if (!(pert.value >= 0.0 && pert.value <= 1.0)) {
        throw DomainError("perturbation threshold " + format_eps(pert.value) + " outside [0, 1]");
      }
      if (p.model != ModelKind::PrrlemHeHK && p.model != ModelKind::ClassicHK) {
        throw DomainError("threshold perturbation needs per-agent thresholds; model " +
                          std::string(to_string(p.model)) + " has none");
      }
      if (p.thresholds_scalar) {
        p.thresholds.assign(n, p.thresholds.front());
        p.thresholds_scalar = false;
      }
      p.thresholds[pert.agent] = pert.value;
    }
  }
  return Scenario(std::move(p));
}

ComparisonColumn evaluate_column(std::string label, const Scenario& scenario,
                                 const EnsembleOptions& options) {
  EnsembleResult r = run_ensemble(scenario, options);
  return {std::move(label), scenario, decide(r), leader_frequency(r), cluster_summary(r)};
}

ComparisonReport compare_columns(std::vector<ComparisonColumn> columns) {
  ComparisonReport rep;
  rep.columns = std::move(columns);
  const std::size_t c = rep.columns.size();
  if (c == 0) return rep;
  const std::size_t n = rep.columns.front().scenario.agents();

  rep.agreement.assign(c, std::vector<double>(c, 0.0));
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      std::size_t same = 0;
      for (AgentIndex i = 0; i < n; ++i) {
        if (rep.columns[a].decision.chosen(i) == rep.columns[b].decision.chosen(i)) ++same;
      }
      rep.agreement[a][b] = static_cast<double>(same) / static_cast<double>(n);
    }
  }

  const auto& base = rep.columns.front().decision;
  for (const auto& col : rep.columns) {
    std::vector<std::vector<double>> per_agent;
    for (AgentIndex i = 0; i < n; ++i) {
      const auto& r0 = base.for_agent(i).reps;
      const auto& r1 = col.decision.for_agent(i).reps;
      std::vector<double> delta(r1.size());
      for (std::size_t xi = 0; xi < r1.size(); ++xi) delta[xi] = r1[xi] - r0[xi];
      per_agent.push_back(std::move(delta));
    }
    rep.rep_deltas.push_back(std::move(per_agent));
  }
  return rep;
}

ComparisonReport model_compare(const Scenario& base, std::span<const ModelKind> models,
                               std::span<const double> eps_grid, const EnsembleOptions& options) {
  std::vector<ComparisonColumn> columns;
  for (ModelKind m : models) {
    ScenarioParams p = base.params();
    p.model = m;
    const std::string model_name(to_string(m));
    const bool grid_applies = !eps_grid.empty() && (m == ModelKind::PrrlemHoHK || m == ModelKind::ClassicHK);

    if (!is_hk(m)) {
      p.thresholds.clear();
      p.thresholds_scalar = true;
      columns.push_back(evaluate_column(model_name, Scenario(p), options));
      continue;
    }
    if (grid_applies) {
      for (double eps : eps_grid) {
        p.thresholds = {eps};
        p.thresholds_scalar = true;
        columns.push_back(evaluate_column(model_name + " eps=" + format_eps(eps), Scenario(p), options));
      }
      continue;
    }
    if (p.thresholds.empty()) {
      throw ScenarioError("thresholds", "model " + model_name +
                                            " needs confidence thresholds; add them to the scenario "
                                            "or pass an epsilon grid");
    }
    columns.push_back(evaluate_column(model_name, Scenario(p), options));
  }
  return compare_columns(std::move(columns));
}

RobustnessReport robustness_compare(const Scenario& scenario,
                                    std::span<const Perturbation> perturbations,
                                    const EnsembleOptions& options) {
  const Scenario perturbed = apply_perturbations(scenario, perturbations);
  std::vector<ComparisonColumn> columns;
  columns.push_back(evaluate_column("baseline", scenario, options));
  columns.push_back(evaluate_column("perturbed", perturbed, options));

  RobustnessReport out;
  out.perturbations.assign(perturbations.begin(), perturbations.end());
  out.comparison = compare_columns(std::move(columns));

  const auto& before = out.comparison.columns[0].decision;
  const auto& after = out.comparison.columns[1].decision;
  const std::size_t n = scenario.agents();
  auto& v = out.verdict;

  std::set<AgentIndex> targets;
  for (const auto& p : perturbations) targets.insert(p.agent);
  v.targeted.assign(targets.begin(), targets.end());

  for (AgentIndex i = 0; i < n; ++i) {
    if (before.chosen(i) != after.chosen(i)) {
      v.changed_agents.push_back(i);
      if (!targets.contains(i)) v.untargeted_unchanged = false;
    }
    if (before.for_agent(i).winners != after.for_agent(i).winners) v.winner_changed_agents.push_back(i);
    for (double d : out.comparison.rep_deltas[1][i]) v.max_abs_rep_delta = std::max(v.max_abs_rep_delta, std::abs(d));
  }
  v.chosen_unchanged = v.changed_agents.empty();

  v.baseline_terms = distinct_chosen(before, n);
  v.perturbed_terms = distinct_chosen(after, n);
  std::set_difference(v.perturbed_terms.begin(), v.perturbed_terms.end(), v.baseline_terms.begin(),
                      v.baseline_terms.end(), std::back_inserter(v.added_terms));
  std::set_difference(v.baseline_terms.begin(), v.baseline_terms.end(), v.perturbed_terms.begin(),
                      v.perturbed_terms.end(), std::back_inserter(v.removed_terms));
  v.outcome_terms_unchanged = v.added_terms.empty() && v.removed_terms.empty();
  return out;
}

}  // namespace fuzzy_evolve
