#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fuzzy_evolve {

/// Index ξ of a term h_ξ in a linguistic term set.
struct Term {
  int index = 0;

  friend auto operator<=>(const Term&, const Term&) = default;
};

std::string to_string(Term t);  // "h_3"

inline constexpr double kDefaultBase = 1.37;

/// Balanced linguistic term set H = {h_0, ..., h_2Φ} together with the
/// exponential linguistic-to-numeric mapping parameterised by `base` (a > 1).
///
/// The numeric values θ_ξ are strictly increasing, θ_0 = 0, θ_Φ = 1/2,
/// θ_2Φ = 1 and θ_ξ + θ_{2Φ-ξ} = 1. Instances are immutable.
class LinguisticTermSet {
 public:
  explicit LinguisticTermSet(int phi, double base = kDefaultBase);

  int phi() const noexcept { return phi_; }
  double base() const noexcept { return base_; }
  int cardinality() const noexcept { return 2 * phi_ + 1; }
  Term lowest() const noexcept { return Term{0}; }
  Term highest() const noexcept { return Term{2 * phi_}; }

  bool contains(Term t) const noexcept { return t.index >= 0 && t.index <= 2 * phi_; }

  /// θ_ξ. Throws DomainError for an index outside [0, 2Φ].
  double to_numeric(Term t) const;

  /// Nearest term to `y`; y >= 1 maps to h_2Φ and y <= 0 to h_0. A value
  /// exactly halfway between two θ values maps to the lower term.
  /// Throws DomainError for non-finite input.
  Term to_linguistic(double y) const;

  /// neg(h_i) = h_{2Φ-i}.
  Term negation(Term t) const;

  std::span<const double> values() const noexcept { return theta_; }

  friend bool operator==(const LinguisticTermSet& a, const LinguisticTermSet& b) {
    return a.phi_ == b.phi_ && a.base_ == b.base_;
  }

 private:
  void check(Term t) const;

  int phi_;
  double base_;
  std::vector<double> theta_;
};

}  // namespace fuzzy_evolve
