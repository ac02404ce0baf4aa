#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fuzzy_evolve/dynamics.hpp"
#include "fuzzy_evolve/grrv.hpp"
#include "fuzzy_evolve/scenario.hpp"

namespace fuzzy_evolve {

/// What the ensemble keeps from one trial.
struct TrialSummary {
  std::vector<Term> final_opinions;
  /// frozen[i]: agent i held its initial term in every snapshot.
  std::vector<bool> frozen;
  /// HK models only: the confidence sets of the last two snapshots are
  /// identical and more than one distinct opinion remains.
  bool echo_chamber = false;
  std::vector<std::uint64_t> leader_counts;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

TrialSummary summarize(const Scenario& scenario, const TrialTrace& trace);

struct EnsembleOptions {
  unsigned workers = 0;  // 0 = hardware concurrency
  bool keep_traces = false;
};

struct EnsembleResult {
  Scenario scenario;
  std::vector<TrialSummary> trials;  // indexed by trial
  std::vector<TrialTrace> traces;    // empty unless keep_traces
  std::vector<std::uint64_t> leader_counts;
  std::uint64_t leader_events = 0;
  double elapsed_seconds = 0.0;
  unsigned workers = 1;
};

/// Runs trials 0..M-1. Results are stored by trial index, so the outcome does
/// not depend on the worker count or scheduling.
EnsembleResult run_ensemble(const Scenario& scenario, const EnsembleOptions& options = {});

enum class TallyMode { Global, PerAgent };

std::string to_string(TallyMode m);

/// Consensus-style models report one pooled row; the rest report per agent.
TallyMode default_tally_mode(ModelKind model) noexcept;

/// Occurrence counts of final terms. Global mode has one row with sample size
/// M*N; per-agent mode has N rows with sample size M each.
class TallyTable {
 public:
  TallyTable(TallyMode mode, std::size_t agents, int cardinality);

  void add_trial(std::span<const Term> final_opinions);
  /// Exact integer merge; associative and commutative.
  TallyTable& merge(const TallyTable& other);

  TallyMode mode() const noexcept { return mode_; }
  std::size_t agents() const noexcept { return agents_; }
  int cardinality() const noexcept { return cardinality_; }
  std::size_t rows() const noexcept { return counts_.size(); }
  std::uint64_t trials() const noexcept { return trials_; }
  std::uint64_t sample_size() const noexcept;
  std::span<const std::uint64_t> row(std::size_t r) const { return counts_.at(r); }
  double proportion(std::size_t r, int term) const;

  friend bool operator==(const TallyTable&, const TallyTable&) = default;

 private:
  TallyMode mode_;
  std::size_t agents_;
  int cardinality_;
  std::uint64_t trials_ = 0;
  std::vector<std::vector<std::uint64_t>> counts_;
};

TallyTable tally(std::span<const TrialSummary> trials, std::size_t agents, int cardinality,
                 TallyMode mode);
TallyTable tally(const EnsembleResult& result, TallyMode mode);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
  double point = 0.0;
  double z = kDefaultZ;

  Interval interval() const { return Interval(lo, hi); }
};

/// Normal-approximation interval p ± z sqrt(p(1-p)/n), clamped to [0, 1].
/// Throws DomainError for p outside [0,1], n == 0 or z <= 0.
ConfidenceInterval confidence_interval(double p, std::uint64_t n, double z);

struct LeaderFrequency {
  bool applicable = false;
  std::string note;
  std::vector<std::uint64_t> counts;
  std::vector<double> percentages;
  std::uint64_t total = 0;
  /// Pearson χ² against the uniform distribution, N-1 degrees of freedom.
  double chi_square = 0.0;
  double p_value = 1.0;
};

LeaderFrequency leader_frequency(const EnsembleResult& result);

/// Upper-tail probability of a χ² statistic with `dof` degrees of freedom.
double chi_square_upper_tail(double statistic, double dof);

}  // namespace fuzzy_evolve
