#include "fuzzy_evolve/linguistic_scale.hpp"

#include <cmath>

#include "fuzzy_evolve/errors.hpp"

namespace fuzzy_evolve {

std::string to_string(Term t) { return "h_" + std::to_string(t.index); }

LinguisticTermSet::LinguisticTermSet(int phi, double base) : phi_(phi), base_(base) {
  if (phi < 1) {
    throw DomainError("linguistic term set: phi must be >= 1, got " + std::to_string(phi));
  }
  if (!std::isfinite(base) || !(base > 1.0)) {
    throw DomainError("linguistic term set: base must be a finite value > 1, got " +
                      std::to_string(base));
  }

  const double top = std::pow(base, phi);
  const double denom = 2.0 * top - 2.0;
  theta_.resize(static_cast<std::size_t>(2 * phi + 1));
  for (int xi = 0; xi <= 2 * phi; ++xi) {
    double v = xi <= phi ? (top - std::pow(base, phi - xi)) / denom
                         : (top + std::pow(base, xi - phi) - 2.0) / denom;
    theta_[static_cast<std::size_t>(xi)] = v;
  }
  // Large phi with a large base overflows pow(); such scales are unusable.
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    if (!std::isfinite(theta_[i]) || (i > 0 && !(theta_[i] > theta_[i - 1]))) {
      throw DomainError("linguistic term set: numeric values are not strictly increasing for phi=" +
                        std::to_string(phi) + ", base=" + std::to_string(base));
    }
  }
}

void LinguisticTermSet::check(Term t) const {
  if (!contains(t)) {
    throw DomainError("term index " + std::to_string(t.index) + " outside [0, " +
                      std::to_string(2 * phi_) + "]");
  }
}

double LinguisticTermSet::to_numeric(Term t) const {
  check(t);
  return theta_[static_cast<std::size_t>(t.index)];
}

Term LinguisticTermSet::to_linguistic(double y) const {
  if (!std::isfinite(y)) {
    throw DomainError("cannot quantize a non-finite opinion value");
  }
  if (y >= 1.0) return highest();
  if (y <= 0.0) return lowest();

  std::size_t best = 0;
  double best_dist = std::abs(y - theta_[0]);
  for (std::size_t i = 1; i < theta_.size(); ++i) {
    const double d = std::abs(y - theta_[i]);
    if (d < best_dist) {  // strict: ties stay on the lower index
      best = i;
      best_dist = d;
    }
  }
  return Term{static_cast<int>(best)};
}

Term LinguisticTermSet::negation(Term t) const {
  check(t);
  return Term{2 * phi_ - t.index};
}

}  // namespace fuzzy_evolve
