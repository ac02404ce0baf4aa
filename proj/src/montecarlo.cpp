#include "fuzzy_evolve/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "fuzzy_evolve/errors.hpp"

namespace fuzzy_evolve {

namespace {

std::vector<std::vector<AgentIndex>> confidence_sets(const Scenario& sc,
                                                     const std::vector<Term>& opinions) {
  const auto state = make_state(sc.scale(), opinions);
  const auto& eps = sc.thresholds()->per_agent;
  std::vector<std::vector<AgentIndex>> out;
  out.reserve(state.size());
  for (AgentIndex i = 0; i < state.size(); ++i) {
    out.push_back(confidence_set(state.numeric, i, eps[i]).members);
  }
  return out;
}

}  // namespace

TrialSummary summarize(const Scenario& scenario, const TrialTrace& trace) {
  const std::size_t n = scenario.agents();
  TrialSummary s;
  s.final_opinions = trace.final_opinions;
  s.frozen.assign(n, true);
  for (const auto& snap : trace.snapshots) {
    for (std::size_t i = 0; i < n; ++i) {
      if (snap[i] != trace.snapshots.front()[i]) s.frozen[i] = false;
    }
  }
  s.leader_counts.assign(n, 0);
  for (const auto& ev : trace.leaders) ++s.leader_counts[ev.leader];

  if (is_hk(scenario.model()) && trace.snapshots.size() >= 2) {
    const std::set<Term> distinct(trace.final_opinions.begin(), trace.final_opinions.end());
    const auto& last = trace.snapshots[trace.snapshots.size() - 1];
    const auto& prev = trace.snapshots[trace.snapshots.size() - 2];
    s.echo_chamber =
        distinct.size() > 1 && confidence_sets(scenario, last) == confidence_sets(scenario, prev);
  }
  return s;
}

EnsembleResult run_ensemble(const Scenario& scenario, const EnsembleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = scenario.trials();

  unsigned workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, m));

  EnsembleResult result{scenario, {}, {}, {}, 0, 0.0, workers};
  result.trials.resize(m);
  if (options.keep_traces) result.traces.resize(m);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t k = next++; k < m; k = next++) {
        TrialTrace trace = run_trial(scenario, k);
        result.trials[k] = summarize(scenario, trace);
        if (options.keep_traces) result.traces[k] = std::move(trace);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = m;
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  result.leader_counts.assign(scenario.agents(), 0);
  for (const auto& t : result.trials) {
    for (std::size_t i = 0; i < t.leader_counts.size(); ++i) {
      result.leader_counts[i] += t.leader_counts[i];
      result.leader_events += t.leader_counts[i];
    }
  }
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string to_string(TallyMode m) { return m == TallyMode::Global ? "global" : "per-agent"; }

TallyMode default_tally_mode(ModelKind model) noexcept {
  return model == ModelKind::PrrlemDeGroot ? TallyMode::Global : TallyMode::PerAgent;
}

TallyTable::TallyTable(TallyMode mode, std::size_t agents, int cardinality)
    : mode_(mode), agents_(agents), cardinality_(cardinality) {
  const std::size_t rows = mode == TallyMode::Global ? 1 : agents;
  counts_.assign(rows, std::vector<std::uint64_t>(static_cast<std::size_t>(cardinality), 0));
}

void TallyTable::add_trial(std::span<const Term> final_opinions) {
  if (final_opinions.size() != agents_) {
    throw DomainError("tally: trial has " + std::to_string(final_opinions.size()) +
                      " agents, table expects " + std::to_string(agents_));
  }
  for (std::size_t i = 0; i < final_opinions.size(); ++i) {
    const int xi = final_opinions[i].index;
    if (xi < 0 || xi >= cardinality_) throw DomainError("tally: term index out of range");
    auto& r = counts_[mode_ == TallyMode::Global ? 0 : i];
    ++r[static_cast<std::size_t>(xi)];
  }
  ++trials_;
}

TallyTable& TallyTable::merge(const TallyTable& other) {
  if (other.mode_ != mode_ || other.agents_ != agents_ || other.cardinality_ != cardinality_) {
    throw DomainError("tally: cannot merge tables of different shape");
  }
  for (std::size_t r = 0; r < counts_.size(); ++r) {
    for (std::size_t c = 0; c < counts_[r].size(); ++c) counts_[r][c] += other.counts_[r][c];
  }
  trials_ += other.trials_;
  return *this;
}

std::uint64_t TallyTable::sample_size() const noexcept {
  return mode_ == TallyMode::Global ? trials_ * agents_ : trials_;
}

double TallyTable::proportion(std::size_t r, int term) const {
  const auto n = sample_size();
  if (n == 0) return 0.0;
  return static_cast<double>(counts_.at(r).at(static_cast<std::size_t>(term))) /
         static_cast<double>(n);
}

TallyTable tally(std::span<const TrialSummary> trials, std::size_t agents, int cardinality,
                 TallyMode mode) {
  TallyTable t(mode, agents, cardinality);
  for (const auto& tr : trials) t.add_trial(tr.final_opinions);
  return t;
}

TallyTable tally(const EnsembleResult& result, TallyMode mode) {
  return tally(result.trials, result.scenario.agents(), result.scenario.scale().cardinality(), mode);
}

ConfidenceInterval confidence_interval(double p, std::uint64_t n, double z) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("confidence interval: p must lie in [0, 1]");
  if (n == 0) throw DomainError("confidence interval: sample size must be positive");
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("confidence interval: z must be > 0");
  const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return {std::max(0.0, p - half), std::min(1.0, p + half), p, z};
}

double chi_square_upper_tail(double statistic, double dof) {
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

LeaderFrequency leader_frequency(const EnsembleResult& result) {
  LeaderFrequency f;
  if (!is_prrlem(result.scenario.model())) {
    f.note = "not applicable: " + std::string(to_string(result.scenario.model())) +
             " is deterministic and elects no leaders";
    return f;
  }
  f.applicable = true;
  f.counts = result.leader_counts;
  f.total = result.leader_events;
  const double n = static_cast<double>(f.counts.size());
  const double expected = static_cast<double>(f.total) / n;
  for (auto c : f.counts) {
    const double pct = f.total ? 100.0 * static_cast<double>(c) / static_cast<double>(f.total) : 0.0;
    f.percentages.push_back(pct);
    if (expected > 0.0) {
      const double d = static_cast<double>(c) - expected;
      f.chi_square += d * d / expected;
    }
  }
  f.p_value = chi_square_upper_tail(f.chi_square, n - 1.0);
  if (result.scenario.model() != ModelKind::PrrlemDeGroot) {
    f.note = "one event per distinct confidence set per round; uniformity is not expected";
  }
  return f;
}

}  // namespace fuzzy_evolve
