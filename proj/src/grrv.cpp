#include "fuzzy_evolve/grrv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fuzzy_evolve/errors.hpp"

namespace fuzzy_evolve {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
    throw DomainError("interval [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] is not inside [0, 1] with lo <= hi");
  }
}

TskSystem::TskSystem(std::size_t input_dim, std::vector<TskRule> rules)
    : dim_(input_dim), rules_(std::move(rules)) {
  if (rules_.empty()) throw DomainError("TSK system needs at least one rule");
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (rules_[k].antecedents.size() != dim_ || rules_[k].consequent.size() != dim_ + 1) {
      throw DomainError("TSK rule " + std::to_string(k) + " does not match input dimension " +
                        std::to_string(dim_));
    }
  }
}

double TskSystem::evaluate(std::span<const double> inputs) const {
  if (inputs.size() != dim_) {
    throw DomainError("TSK system expects " + std::to_string(dim_) + " inputs, got " +
                      std::to_string(inputs.size()));
  }
  double num = 0.0;
  double den = 0.0;
  for (const auto& rule : rules_) {
    double firing = 1.0;
    double out = rule.consequent[0];
    for (std::size_t j = 0; j < dim_; ++j) {
      firing *= rule.antecedents[j](inputs[j]);
      out += rule.consequent[j + 1] * inputs[j];
    }
    num += firing * out;
    den += firing;
  }
  if (!(den > 0.0)) throw DomainError("TSK system: no rule fires for this input");
  return num / den;
}

TskSystem golden_rule_system() {
  const MembershipFn large = [](double y) { return y; };
  const MembershipFn small = [](double z) { return 1.0 - z; };
  std::vector<TskRule> rules{
      {{large, small}, {1.0, 0.0, 0.0}},
      {{large, large}, {0.5, 0.0, 0.0}},
      {{small, large}, {0.5, 0.0, 0.0}},
      {{small, small}, {0.0, 0.0, 0.0}},
  };
  return TskSystem(2, std::move(rules));
}

double rep(const Interval& x) {
  const double m = x.mean();
  return m + (0.5 - m) * x.range();
}

RankedDecision rank(std::span<const Interval> intervals, std::span<const Term> labels) {
  if (intervals.size() != labels.size()) {
    throw DomainError("rank: " + std::to_string(intervals.size()) + " intervals but " +
                      std::to_string(labels.size()) + " labels");
  }
  if (intervals.empty()) throw DomainError("rank: nothing to rank");

  RankedDecision d;
  d.labels.assign(labels.begin(), labels.end());
  d.reps.reserve(intervals.size());
  for (const auto& x : intervals) d.reps.push_back(rep(x));

  d.order.resize(intervals.size());
  std::iota(d.order.begin(), d.order.end(), std::size_t{0});
  std::sort(d.order.begin(), d.order.end(), [&](std::size_t a, std::size_t b) {
    if (d.reps[a] != d.reps[b]) return d.reps[a] > d.reps[b];
    return d.labels[a] < d.labels[b];
  });

  const double best = d.reps[d.order.front()];
  for (std::size_t pos : d.order) {
    if (d.reps[pos] == best) d.winners.push_back(d.labels[pos]);
  }
  std::sort(d.winners.begin(), d.winners.end());
  d.chosen = d.winners.front();
  return d;
}

}  // namespace fuzzy_evolve
