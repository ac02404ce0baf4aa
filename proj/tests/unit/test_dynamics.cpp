#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "fuzzy_evolve/dynamics.hpp"
#include "fuzzy_evolve/errors.hpp"
#include "fuzzy_evolve/montecarlo.hpp"

using namespace fuzzy_evolve;

namespace {

const LinguisticTermSet kScale(3, 1.37);

std::vector<Term> terms(const std::vector<int>& idx) {
  std::vector<Term> out;
  for (int i : idx) out.push_back(Term{i});
  return out;
}

std::vector<AgentIndex> iota(std::size_t n) {
  std::vector<AgentIndex> v(n);
  std::iota(v.begin(), v.end(), AgentIndex{0});
  return v;
}

TrialState random_state(std::mt19937_64& gen, std::size_t n) {
  std::uniform_int_distribution<int> d(0, 6);
  std::vector<Term> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(Term{d(gen)});
  return make_state(kScale, t);
}

}  // namespace

TEST_CASE("draw_leader: singleton forces weight 1 and skips the weight draw") {
  const std::vector<AgentIndex> one{4};
  RngStream a(7);
  RngStream b(7);
  const auto d = draw_leader(a, one);
  CHECK(d.leader == 4);
  CHECK(d.weight == 1.0);
  (void)b.uniform_index(1);
  CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("draw_leader: two draws, replayable") {
  const auto all = iota(15);
  RngStream a(99);
  RngStream b(99);
  const auto d = draw_leader(a, all);
  const auto leader = b.uniform_index(15);
  const auto weight = b.uniform01();
  CHECK(d.leader == leader);
  CHECK(d.weight == weight);
  CHECK(d.weight >= 0.0);
  CHECK(d.weight < 1.0);
  RngStream c(99);
  const auto e = draw_leader(c, all);
  CHECK(e.leader == d.leader);
  CHECK(e.weight == d.weight);
  RngStream r(1);
  CHECK_THROWS_AS(draw_leader(r, std::vector<AgentIndex>{}), std::logic_error);
}

TEST_CASE("draw_leader: uniform over 9000 draws among 15 agents") {
  const auto all = iota(15);
  RngStream rng(2024);
  std::vector<double> counts(15, 0.0);
  for (int k = 0; k < 9000; ++k) counts[draw_leader(rng, all).leader] += 1.0;
  double chi = 0.0;
  for (double c : counts) chi += (c - 600.0) * (c - 600.0) / 600.0;
  CHECK(chi_square_upper_tail(chi, 14.0) > 0.01);
}

TEST_CASE("follower_weights") {
  const auto members = iota(15);
  const auto w = follower_weights({3, 0.3}, members);
  CHECK(w[3] == 0.3);
  for (std::size_t k = 0; k < 15; ++k) {
    if (k != 3) CHECK(w[k] == doctest::Approx(0.05).epsilon(1e-12));
  }
  const auto full = follower_weights({0, 1.0}, members);
  CHECK(full[0] == 1.0);
  for (std::size_t k = 1; k < 15; ++k) CHECK(full[k] == 0.0);

  CHECK(follower_weights({5, 0.2}, std::vector<AgentIndex>{5}) == std::vector<double>{1.0});

  std::mt19937_64 gen(5);
  RngStream rng(5);
  for (int k = 0; k < 10000; ++k) {
    const auto n = std::uniform_int_distribution<std::size_t>(1, 40)(gen);
    const auto m = iota(n);
    const auto ws = follower_weights(draw_leader(rng, m), m);
    double sum = 0.0;
    for (double x : ws) sum += x;
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("confidence_set") {
  const auto state = make_state(kScale, terms(fixtures::kExample1Opinions));
  SUBCASE("eps = 0 keeps only exact equals") {
    const auto cs = confidence_set(state.numeric, 0, 0.0);
    CHECK(cs.members == std::vector<AgentIndex>{0, 2, 4, 7, 9});
  }
  SUBCASE("eps = 1 is everyone") {
    CHECK(confidence_set(state.numeric, 3, 1.0).members == iota(15));
  }
  SUBCASE("isolated extremes at eps = 0.21") {
    CHECK(confidence_set(state.numeric, 10, 0.21).members == std::vector<AgentIndex>{10});
    CHECK(confidence_set(state.numeric, 11, 0.21).members == std::vector<AgentIndex>{11});
  }
  SUBCASE("closed ball") {
    const std::vector<double> y{0.1, 0.35, 0.6};
    CHECK(confidence_set(y, 1, 0.25).members == std::vector<AgentIndex>{0, 1, 2});
  }
}

TEST_CASE("prrlem_degroot_round") {
  SUBCASE("consensus is a fixed point for any draw") {
    const auto state = make_state(kScale, std::vector<Term>(15, Term{4}));
    RngStream rng(3);
    for (int k = 0; k < 20; ++k) {
      const auto next = prrlem_degroot_round(kScale, state, draw_leader(rng, iota(15)));
      CHECK(next.opinions == state.opinions);
    }
  }
  SUBCASE("full-weight leader at h_6 pulls everyone to h_6") {
    const auto state = make_state(kScale, terms(fixtures::kExample1Opinions));
    const auto next = prrlem_degroot_round(kScale, state, {11, 1.0});
    CHECK(next.opinions == std::vector<Term>(15, Term{6}));
    CHECK(next.round == 2);
  }
  SUBCASE("update value stays in the opinion hull") {
    std::mt19937_64 gen(11);
    RngStream rng(11);
    for (int k = 0; k < 2000; ++k) {
      const auto state = random_state(gen, 15);
      const auto members = iota(15);
      const auto d = draw_leader(rng, members);
      const double v = leader_weighted_value(state.numeric, members, d);
      const auto [lo, hi] = std::minmax_element(state.numeric.begin(), state.numeric.end());
      CHECK(v >= *lo - 1e-12);
      CHECK(v <= *hi + 1e-12);
      const auto next = prrlem_degroot_round(kScale, state, d);
      CHECK(next.opinions == std::vector<Term>(15, kScale.to_linguistic(v)));
    }
  }
}

TEST_CASE("prrlem_hk_round") {
  SUBCASE("singleton sets never move") {
    const auto state = make_state(kScale, terms(fixtures::kExample1Opinions));
    const std::vector<double> eps(15, 0.21);
    RngStream rng(8);
    std::vector<LeaderEvent> log;
    const auto next = prrlem_hk_round(kScale, state, eps, rng, &log);
    CHECK(next.opinions[10] == Term{0});
    CHECK(next.opinions[11] == Term{6});
    // Distinct sets at eps 0.21: {h0}, {h1,h2}, {h1,h2,h3}, {h2,h3,h4}, {h3,h4,h5}, {h4,h5}, {h6}.
    CHECK(log.size() == 7);
  }
  SUBCASE("agents with equal opinions and thresholds move together") {
    std::mt19937_64 gen(21);
    RngStream rng(21);
    std::uniform_real_distribution<double> e(0.0, 0.5);
    for (int k = 0; k < 500; ++k) {
      auto state = random_state(gen, 12);
      const double shared = e(gen);
      std::vector<double> eps(12, shared);
      for (int r = 0; r < 5; ++r) {
        const auto next = prrlem_hk_round(kScale, state, eps, rng);
        for (std::size_t i = 0; i < 12; ++i) {
          for (std::size_t j = 0; j < 12; ++j) {
            if (state.opinions[i] == state.opinions[j]) CHECK(next.opinions[i] == next.opinions[j]);
          }
        }
        state = next;
      }
    }
  }
  SUBCASE("eps = 1 reproduces the DeGroot round on the same stream") {
    std::mt19937_64 gen(31);
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const auto state = random_state(gen, 15);
      RngStream a(seed);
      RngStream b(seed);
      const auto hk = prrlem_hk_round(kScale, state, std::vector<double>(15, 1.0), a);
      const auto dg = prrlem_degroot_round(kScale, state, draw_leader(b, iota(15)));
      CHECK(hk.opinions == dg.opinions);
      CHECK(a.uniform01() == b.uniform01());
    }
  }
}

TEST_CASE("classic_degroot_round on example 1 data") {
  auto eq = make_state(kScale, terms(fixtures::kExample1Opinions));
  auto dist = eq;
  for (int t = 0; t < 9; ++t) {
    eq = classic_degroot_round(kScale, eq, DeGrootWeights::Equal);
    dist = classic_degroot_round(kScale, dist, DeGrootWeights::Distance);
  }
  CHECK(eq.opinions == std::vector<Term>(15, Term{3}));
  CHECK(dist.opinions == std::vector<Term>(15, Term{2}));

  const auto uniform = make_state(kScale, std::vector<Term>(6, Term{5}));
  CHECK(classic_degroot_round(kScale, uniform, DeGrootWeights::Equal).opinions == uniform.opinions);
  CHECK(classic_degroot_round(kScale, uniform, DeGrootWeights::Distance).opinions == uniform.opinions);
}

TEST_CASE("classic_hk_round") {
  const auto start = make_state(kScale, terms(fixtures::kExample1Opinions));
  SUBCASE("eps = 0 freezes the state") {
    auto s = start;
    for (int t = 0; t < 9; ++t) s = classic_hk_round(kScale, s, std::vector<double>(15, 0.0));
    CHECK(s.opinions == start.opinions);
  }
  SUBCASE("a far cluster never changes") {
    auto s = make_state(kScale, terms({0, 0, 1, 6, 6}));
    for (int t = 0; t < 9; ++t) s = classic_hk_round(kScale, s, std::vector<double>(5, 0.3));
    CHECK(s.opinions[3] == Term{6});
    CHECK(s.opinions[4] == Term{6});
  }
  SUBCASE("one threshold change alters the heterogeneous outcome") {
    auto a = start;
    auto b = start;
    auto eps_b = fixtures::kExample3Thresholds;
    eps_b[5] = 0.2;
    for (int t = 0; t < 9; ++t) {
      a = classic_hk_round(kScale, a, fixtures::kExample3Thresholds);
      b = classic_hk_round(kScale, b, eps_b);
    }
    CHECK(a.opinions != b.opinions);
  }
}

TEST_CASE("run_trial") {
  const auto sc = fixtures::example1();
  SUBCASE("deterministic") {
    CHECK(run_trial(sc, 17) == run_trial(sc, 17));
    CHECK(run_trial(sc, 17) != run_trial(sc, 18));
  }
  SUBCASE("prrlem-degroot reaches consensus after one round and stays") {
    for (std::size_t k = 0; k < 200; ++k) {
      const auto tr = run_trial(sc, k);
      REQUIRE(tr.snapshots.size() == 10);
      CHECK(tr.final_opinions == tr.snapshots.back());
      CHECK(tr.leaders.size() == 9);
      for (std::size_t s = 1; s < tr.snapshots.size(); ++s) {
        CHECK(std::set<Term>(tr.snapshots[s].begin(), tr.snapshots[s].end()).size() == 1);
        CHECK(tr.snapshots[s] == tr.snapshots[1]);
      }
    }
  }
  SUBCASE("iteration count") {
    auto p = fixtures::example_params(ModelKind::PrrlemDeGroot);
    p.iterations = 1;
    CHECK(run_trial(Scenario(p), 0).snapshots.size() == 2);
    p.iterations = 0;
    CHECK_THROWS_AS(Scenario{p}, ScenarioError);
  }
  SUBCASE("classic models ignore the trial index") {
    const Scenario eq(fixtures::example_params(ModelKind::ClassicDeGrootEqual));
    const Scenario hk(fixtures::example_params(ModelKind::ClassicHK, fixtures::kExample3Thresholds, false));
    for (std::size_t k = 1; k < 20; ++k) {
      CHECK(run_trial(eq, k).final_opinions == run_trial(eq, 0).final_opinions);
      CHECK(run_trial(hk, k).snapshots == run_trial(hk, 0).snapshots);
    }
  }
  SUBCASE("opinions always stay on the grid") {
    const auto hk = fixtures::example3();
    for (std::size_t k = 0; k < 50; ++k) {
      for (const auto& snap : run_trial(hk, k).snapshots) {
        for (Term t : snap) CHECK(hk.scale().contains(t));
      }
    }
  }
}

TEST_CASE("scenario validation") {
  using fixtures::example_params;
  CHECK_THROWS_AS(Scenario(example_params(ModelKind::PrrlemHoHK)), ScenarioError);
  CHECK_THROWS_AS(Scenario(example_params(ModelKind::PrrlemDeGroot, {0.2})), ScenarioError);
  CHECK_THROWS_AS(Scenario(example_params(ModelKind::PrrlemHeHK, {0.2})), ScenarioError);
  CHECK_THROWS_AS(Scenario(example_params(ModelKind::PrrlemHoHK, fixtures::kExample3Thresholds, false)),
                  ScenarioError);
  CHECK_THROWS_AS(Scenario(example_params(ModelKind::PrrlemHoHK, {1.5})), ScenarioError);
  CHECK_NOTHROW(Scenario(example_params(ModelKind::ClassicHK, {0.2})));
  CHECK_NOTHROW(Scenario(example_params(ModelKind::ClassicHK, fixtures::kExample3Thresholds, false)));

  auto p = example_params(ModelKind::PrrlemDeGroot);
  p.initial_opinions = {3};
  CHECK_THROWS_AS(Scenario{p}, ScenarioError);
  p.initial_opinions = {1, 2, 7};
  try {
    Scenario s{p};
    FAIL("expected ScenarioError");
  } catch (const ScenarioError& e) {
    CHECK(e.field() == "initial_opinions[2]");
  }
}
