#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fuzzy_evolve/linguistic_scale.hpp"

namespace fuzzy_evolve {

/// Closed interval [lo, hi] with 0 <= lo <= hi <= 1.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double mean() const noexcept { return 0.5 * (lo_ + hi_); }
  double range() const noexcept { return hi_ - lo_; }

 private:
  double lo_;
  double hi_;
};

using MembershipFn = std::function<double(double)>;

/// IF q_1 is A_1 AND ... AND q_d is A_d THEN y = p_0 + p_1 q_1 + ... + p_d q_d
struct TskRule {
  std::vector<MembershipFn> antecedents;
  std::vector<double> consequent;  // p_0 .. p_d
};

/// Zero-order or first-order Takagi-Sugeno-Kang system with product
/// inference and weighted-average defuzzification.
class TskSystem {
 public:
  /// Throws DomainError if `rules` is empty or any rule's arity differs
  /// from `input_dim`.
  TskSystem(std::size_t input_dim, std::vector<TskRule> rules);

  std::size_t input_dim() const noexcept { return dim_; }
  std::size_t rule_count() const noexcept { return rules_.size(); }

  /// Throws DomainError on wrong input length or when no rule fires.
  double evaluate(std::span<const double> inputs) const;

 private:
  std::size_t dim_;
  std::vector<TskRule> rules_;
};

/// Four rules over (mean, range) with L(y) = y ("large"), S(z) = 1 - z
/// ("small"):
///   m large, r small -> 1;  m large, r large -> 1/2;
///   m small, r large -> 1/2; m small, r small -> 0.
TskSystem golden_rule_system();

/// Golden rule representative value m + (1/2 - m) r of an interval.
double rep(const Interval& x);

struct RankedDecision {
  std::vector<Term> labels;       // input order
  std::vector<double> reps;       // aligned with labels
  std::vector<std::size_t> order; // positions into labels, best first
  std::vector<Term> winners;      // all labels sharing the maximal Rep, ascending
  Term chosen;                    // lowest-index winner
};

/// Ranks intervals by Rep, descending; equal Rep values order by term index.
/// Throws DomainError on size mismatch or empty input.
RankedDecision rank(std::span<const Interval> intervals, std::span<const Term> labels);

}  // namespace fuzzy_evolve
