// Copyright 2026 The pomg-trunc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pomg/io.hpp"
#include "pomg/truncation.hpp"

namespace pomg {
namespace {

TEST(WindowTruncate, Examples) {
  const std::vector<int> h{4, 5, 6};
  EXPECT_EQ(window_truncate(h, 2), (Window{5, 6}));
  EXPECT_EQ(window_truncate(std::vector<int>{4}, 3), (Window{4}));
  EXPECT_EQ(window_truncate(std::vector<int>{}, 2), Window{});
  EXPECT_EQ(window_truncate(h, 0), Window{});
  EXPECT_EQ(successor_window(std::vector<int>{1, 2}, 3, 2), (Window{2, 3}));
}

TEST(Prescriptions, CountsAndOrder) {
  EXPECT_EQ(enumerate_prescriptions(1, 2, 0, 1, 1000).size(), 2u);
  EXPECT_EQ(enumerate_prescriptions(2, 2, 0, 1, 1000).size(), 4u);
  const auto all = enumerate_prescriptions(2, 2, 1, 2, 1000);
  ASSERT_EQ(all.size(), 16u);
  EXPECT_EQ(all.front().table, (std::vector<int>{0, 0, 0, 0}));
  EXPECT_EQ(all[1].table, (std::vector<int>{0, 0, 0, 1}));
  EXPECT_EQ(all.back().table, (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(all[5].player, 1);
  EXPECT_EQ(all[5].length, 2);
  EXPECT_EQ(enumerate_prescriptions(3, 2, 0, 0, 1000).size(), 2u);
  EXPECT_THROW(enumerate_prescriptions(2, 2, 0, 3, 100), SizeOverflow);
}

TEST(TruncatedBelief, EmptyWindowIsBaseMeasure) {
  const auto [m, info] = testing::random_model(4);
  const Dynamics dyn(m, info);
  const Belief mu = Belief::over_states(m.prior);
  EXPECT_EQ(truncated_belief(dyn, mu, Window{}, 0).entries(), mu.entries());
  EXPECT_EQ(truncated_belief(dyn, mu, Window{}, 2).entries(), mu.entries());
}

TEST(TruncatedBelief, SingleStateIsPointMass) {
  const auto [m, info] = testing::constant_model(2, 1.0, 0.5);
  const Dynamics dyn(m, info);
  const Belief b = truncated_belief(dyn, Belief::point_mass({0, {}}), Window{0, 0, 0}, 2);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b.entries()[0].first, (Point{0, {0, 0, 0, 0}}));
}

TEST(TruncatedBelief, OneStepMatchesJointLaw) {
  const auto [m, info] = testing::random_example1(6, false);
  const Dynamics dyn(m, info);
  const UniformStrategy uni;
  const auto law = testing::enumerate_joint_law(m, info, uni, 1);
  for (int z = 0; z < info.num_common(); ++z) {
    if (law.marginal({z}) <= 0.0) continue;
    const Belief b = truncated_belief(dyn, Belief::over_states(m.prior), Window{z}, 1);
    EXPECT_LE(tv_distance(b, law.posterior({z})), 1e-12);
  }
}

TEST(BuildGame, DegenerateSingleStateGame) {
  const auto [m, info] = testing::constant_model(1, 0.7, 0.5);
  const Dynamics dyn(m, info);
  for (int ell = 0; ell <= 3; ++ell) {
    const TruncatedGame g = build_truncated_game(dyn, ell);
    ASSERT_EQ(g.num_states(), ell + 1);
    for (int x = 0; x < g.num_states(); ++x) {
      EXPECT_EQ(g.length(x), x);
      ASSERT_EQ(g.num_joint(x), 1u);
      EXPECT_EQ(g.reward(x, 0, 0), 0.7);
      ASSERT_EQ(g.nodes[x].transitions[0].size(), 1u);
      EXPECT_EQ(g.nodes[x].transitions[0][0].prob, 1.0);
      EXPECT_EQ(g.nodes[x].transitions[0][0].next, std::min(x + 1, ell));
    }
  }
}

TEST(BuildGame, MiniMatchingPenniesWindows) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  // The empty window plus one window per common increment.
  ASSERT_EQ(g.num_states(), 9);
  EXPECT_TRUE(g.nodes[0].window.empty());
  for (int x = 1; x < 9; ++x) EXPECT_EQ(g.nodes[x].window, (Window{x - 1}));
  for (int x = 0; x < 9; ++x) {
    ASSERT_EQ(g.num_joint(x), 4u);
    for (std::size_t j = 0; j < 4; ++j) {
      const auto coords = g.joint_indexer(x).unflatten(j);
      const int a = g.gammas(x, 0)[coords[0]].table[0] * 2 + g.gammas(x, 1)[coords[1]].table[0];
      const auto& row = g.nodes[x].transitions[j];
      ASSERT_EQ(row.size(), 2u);
      for (int k = 0; k < 2; ++k) {
        EXPECT_EQ(row[k].prob, 0.5);
        EXPECT_EQ(g.nodes[row[k].next].window, (Window{k * 4 + a}));
      }
    }
  }
  EXPECT_FALSE(g.nodes[3].fallback);
}

TEST(BuildGame, UnreachableBaseWindowFallsBackToUniformPredictor) {
  Example1Spec spec;
  spec.global_states = 2;
  spec.local_states = {1};
  spec.actions = {1};
  spec.transition = {0, 1, 1, 0};  // global state alternates
  const auto [m, info] = make_example1_model(spec);
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1, Belief::point_mass({0, {}}));
  ASSERT_EQ(g.num_states(), 3);
  EXPECT_FALSE(g.nodes[2].fallback);  // (g1) is one step from mu_bar
  EXPECT_TRUE(g.nodes[1].fallback);   // (g0) needs two steps
  EXPECT_EQ(g.nodes[1].belief.entries()[0].first.state, 0);
}

TEST(BuildGame, BudgetsAreEnforced) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  Budgets tiny;
  tiny.sizes = 4;
  EXPECT_THROW(build_truncated_game(dyn, 1, tiny), SizeOverflow);
  Budgets few;
  few.prescriptions = 3;
  EXPECT_THROW(build_truncated_game(dyn, 1, few), SizeOverflow);
}

// Property: rows are stochastic and rewards bounded on generated models.
TEST(GameProperties, WellFormed) {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const auto [m, info] = testing::random_model(seed);
    const Dynamics dyn(m, info);
    for (int ell = 0; ell <= 2; ++ell) {
      const TruncatedGame g = build_truncated_game(dyn, ell);
      for (int x = 0; x < g.num_states(); ++x) {
        EXPECT_TRUE(g.nodes[x].belief.is_normalized());
        for (std::size_t j = 0; j < g.num_joint(x); ++j) {
          double total = 0.0;
          for (const auto& t : g.nodes[x].transitions[j]) total += t.prob;
          EXPECT_NEAR(total, 1.0, 1e-10);
          for (int i = 0; i < g.num_players; ++i) {
            EXPECT_LE(std::abs(g.reward(x, j, i)), g.reward_bound + 1e-12);
          }
        }
      }
    }
  }
}

// Property: each transition row is the increment law summed over the fibre
// of successor windows, recomputed independently of the builder's loop.
TEST(GameProperties, TransitionIsFibreSumOfIncrementLaw) {
  for (std::uint64_t seed = 0; seed < 9; ++seed) {
    const auto [m, info] = testing::random_model(seed);
    const Dynamics dyn(m, info);
    const TruncatedGame g = build_truncated_game(dyn, 1);
    for (int x = 0; x < g.num_states(); ++x) {
      const JointIndexer jidx = g.joint_indexer(x);
      for (std::size_t j = 0; j < jidx.size(); ++j) {
        const auto coords = jidx.unflatten(j);
        std::vector<const Prescription*> gamma;
        for (int i = 0; i < g.num_players; ++i) gamma.push_back(&g.gammas(x, i)[coords[i]]);
        const auto sigma = increment_distribution(dyn, g.nodes[x].belief, gamma);
        std::map<int, double> fibre;
        for (int z = 0; z < static_cast<int>(sigma.size()); ++z) {
          if (sigma[z] > 0.0) fibre[g.find(successor_window(g.nodes[x].window, z, 1))] += sigma[z];
        }
        const auto& row = g.nodes[x].transitions[j];
        ASSERT_EQ(row.size(), fibre.size());
        for (const auto& t : row) EXPECT_NEAR(t.prob, fibre.at(t.next), 1e-14);
      }
    }
  }
}

TEST(GameProperties, Deterministic) {
  const auto [m, info] = testing::random_example1(3, true);
  const Dynamics dyn(m, info);
  EXPECT_EQ(game_to_json(build_truncated_game(dyn, 2)).dump(),
            game_to_json(build_truncated_game(dyn, 2)).dump());
}

// Property: for histories no longer than the window, the window belief is
// the exact posterior, whatever strategy generated the history.
TEST(GameProperties, ExactWithinWindow) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto [m, info] = testing::random_independent_model(seed);
    const Dynamics dyn(m, info);
    const HashedBehaviorStrategy g(seed + 100);
    const auto law = testing::enumerate_joint_law(m, info, g, 2);
    const TruncatedGame game = build_truncated_game(dyn, 2);
    for (const auto& [common, dist] : law.mass) {
      if (law.marginal(common) <= 0.0) continue;
      const int x = game.find(common);
      ASSERT_GE(x, 0);
      EXPECT_LE(tv_distance(game.nodes[x].belief, law.posterior(common)), 1e-10);
    }
  }
}

// Property: the next public belief is a Markov function of the current
// belief and the prescription. The conditional law computed from full
// histories equals the one computed from the belief alone.
TEST(GameProperties, BeliefEvolvesAsMarkovChain) {
  using Law = std::map<std::vector<long long>, double>;
  auto key = [](const Belief& b, int S) {
    std::vector<long long> k;
    for (double x : b.state_marginal(S)) k.push_back(std::llround(x * 1e7));
    return k;
  };
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto [m, info] = testing::random_independent_model(seed);
    const Dynamics dyn(m, info);
    const int S = m.num_states();
    const int n = m.num_players();
    const HashedBehaviorStrategy g(seed);
    const auto law = testing::enumerate_joint_law(m, info, g, 3);
    // (belief class, joint action) -> law of the next belief class.
    std::map<std::pair<std::vector<long long>, int>, Law> from_histories;
    std::map<std::pair<std::vector<long long>, int>, Belief> representative;
    for (const auto& [common, dist] : law.mass) {
      if (common.size() >= 3 || law.marginal(common) <= 0.0) continue;
      const Belief b = law.posterior(common);
      for (int z = 0; z < info.num_common(); ++z) {
        auto next = common;
        next.push_back(z);
        const double w = law.marginal(next);
        if (w <= 0.0) continue;
        const std::pair cls{key(b, S), (*info.action_reveal)[z]};
        from_histories[cls][key(law.posterior(next), S)] += w;
        representative.emplace(cls, b);
      }
    }
    for (auto& [cls, dist] : from_histories) {
      double total = 0.0;
      for (const auto& [k, w] : dist) total += w;
      Law from_belief;
      const Belief b = truncate_histories(representative.at(cls), 0, n);
      const auto coords = dyn.actions().unflatten(static_cast<std::size_t>(cls.second));
      std::vector<Prescription> pres;
      for (int i = 0; i < n; ++i) pres.push_back({i, 0, {coords[i]}});
      std::vector<const Prescription*> gamma;
      for (const auto& p : pres) gamma.push_back(&p);
      const auto sigma = increment_distribution(dyn, b, gamma);
      const StageRule play = [&](int i, std::span<const int>, std::span<double> probs) {
        std::fill(probs.begin(), probs.end(), 0.0);
        probs[coords[i]] = 1.0;
      };
      for (int z = 0; z < info.num_common(); ++z) {
        if (sigma[z] <= 0.0) continue;
        from_belief[key(public_filter_step(dyn, b, play, z), S)] += sigma[z];
      }
      ASSERT_EQ(from_belief.size(), dist.size()) << "seed " << seed;
      for (const auto& [k, w] : dist) {
        ASSERT_TRUE(from_belief.contains(k)) << "seed " << seed;
        EXPECT_NEAR(w / total, from_belief.at(k), 1e-10) << "seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace pomg
