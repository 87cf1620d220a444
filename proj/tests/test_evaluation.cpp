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
#include <functional>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pomg/equilibrium.hpp"
#include "pomg/evaluation.hpp"

namespace pomg {
namespace {

using testing::ModelPair;

// Calls fn on every common history of length <= depth over `alphabet`.
void for_each_history(int alphabet, int depth, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> h;
  std::function<void()> rec = [&] {
    fn(h);
    if (static_cast<int>(h.size()) == depth) return;
    for (int z = 0; z < alphabet; ++z) {
      h.push_back(z);
      rec();
      h.pop_back();
    }
  };
  rec();
}

TEST(Lift, QueriesTheTruncatedWindow) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  for (int ell = 0; ell <= 2; ++ell) {
    const TruncatedGame g = build_truncated_game(dyn, ell);
    const auto p = random_profile(g, 40 + ell);
    const LiftedStrategy lifted = lift(g, p);
    for_each_history(8, 3, [&](const std::vector<int>& h) {
      const int x = g.find(window_truncate(h, ell));
      ASSERT_GE(x, 0);
      EXPECT_EQ(lifted.state_at(h), x);
      for (int i = 0; i < 2; ++i) EXPECT_EQ(lifted.mixture(i, h), p.mix[i][x]);
      if (static_cast<int>(h.size()) <= ell) EXPECT_EQ(g.nodes[x].window, h);
    });
  }
}

TEST(Lift, SharedSuffixesAndConstantAtLengthZero) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  const TruncatedGame g2 = build_truncated_game(dyn, 2);
  const LiftedStrategy l2 = lift(g2, random_profile(g2, 1));
  EXPECT_EQ(l2.mixture(0, std::vector<int>{1, 2, 3, 4}), l2.mixture(0, std::vector<int>{7, 3, 4}));
  const TruncatedGame g0 = build_truncated_game(dyn, 0);
  const LiftedStrategy l0 = lift(g0, random_profile(g0, 1));
  EXPECT_EQ(l0.mixture(1, std::vector<int>{}), l0.mixture(1, std::vector<int>{5, 6, 0}));
}

TEST(Lift, UnreachableWindowThrows) {
  Example1Spec spec;
  spec.global_states = 2;
  spec.local_states = {1, 1};
  spec.actions = {1, 1};
  spec.transition = {1, 0, 0, 1};
  const auto [m, info] = make_example1_model(spec);
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1, Belief::point_mass({0, {}}));
  const LiftedStrategy lifted = lift(g, uniform_profile(g));
  EXPECT_NO_THROW(lifted.state_at(std::vector<int>{0, 0}));
  EXPECT_THROW(lifted.state_at(std::vector<int>{0, 1}), UnknownWindow);
}

TEST(EvaluateExact, ConstantRewardGeometricSeries) {
  const double c = 0.6, d = 0.5;
  const auto [m, info] = testing::constant_model(2, c, d);
  const Dynamics dyn(m, info);
  const UniformStrategy uni;
  for (int T = 1; T <= 5; ++T) {
    const auto v = evaluate_exact(dyn, uni, T);
    EXPECT_NEAR(v[0].center, c * (1 - std::pow(d, T)) / (1 - d), 1e-14);
    EXPECT_LE(v[1].lo(), c / (1 - d) + 1e-14);
    EXPECT_GE(v[1].hi(), c / (1 - d) - 1e-14);
  }
}

TEST(EvaluateExact, LiftedUniformMiniMatchingPenniesIsZero) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  const auto v = evaluate_exact(dyn, lift(g, uniform_profile(g)), 5);
  for (const auto& b : v) {
    EXPECT_NEAR(b.center, 0.0, 1e-14);
    EXPECT_LE(b.lo(), 0.0);
    EXPECT_GE(b.hi(), 0.0);
  }
}

// Property: exact values agree with path enumeration, for behavioral and for
// lifted strategies (the latter exercise the history truncation).
TEST(EvaluateExact, MatchesPathEnumeration) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto [m, info] = testing::random_model(seed);
    const Dynamics dyn(m, info);
    const HashedBehaviorStrategy g(seed);
    const auto want = testing::enumerate_joint_law(m, info, g, 3).value;
    const auto got = evaluate_exact(dyn, g, 3);
    for (int i = 0; i < m.num_players(); ++i) EXPECT_NEAR(got[i].center, want[i], 1e-12);

    const TruncatedGame game = build_truncated_game(dyn, static_cast<int>(seed % 3));
    const LiftedStrategy lifted = lift(game, random_profile(game, seed));
    const auto lwant = testing::enumerate_joint_law(m, info, lifted, 4).value;
    const auto lgot = evaluate_exact(dyn, lifted, 4);
    for (int i = 0; i < m.num_players(); ++i) EXPECT_NEAR(lgot[i].center, lwant[i], 1e-12);
  }
}

TEST(EvaluateExact, BracketsNest) {
  const auto [m, info] = testing::random_example1(2, true);
  const Dynamics dyn(m, info);
  const HashedBehaviorStrategy g(3);
  auto prev = evaluate_exact(dyn, g, 1);
  for (int T = 2; T <= 4; ++T) {
    const auto cur = evaluate_exact(dyn, g, T);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      EXPECT_GE(cur[i].lo(), prev[i].lo() - 1e-12);
      EXPECT_LE(cur[i].hi(), prev[i].hi() + 1e-12);
    }
    prev = cur;
  }
}

TEST(EvaluateExact, BudgetIsEnforced) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  Budgets small;
  small.nodes = 20;
  EXPECT_THROW(evaluate_exact(dyn, UniformStrategy{}, 4, small), InfeasibleEnumeration);
}

TEST(MonteCarlo, DeterministicModelHasZeroWidth) {
  const auto [m, info] = testing::constant_model(2, 0.3, 0.5);
  const Dynamics dyn(m, info);
  const UniformStrategy uni;
  const auto mc = evaluate_monte_carlo(dyn, uni, 4, 10, 1);
  const auto ex = evaluate_exact(dyn, uni, 4);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(mc.std_error[i], 0.0);
    EXPECT_NEAR(mc.mean[i], ex[i].center, 1e-15);
  }
  const auto one = evaluate_monte_carlo(dyn, uni, 4, 1, 9);
  EXPECT_EQ(one.episodes, 1);
  EXPECT_NEAR(one.mean[0], ex[0].center, 1e-15);
}

TEST(MonteCarlo, ReproducibleForFixedSeed) {
  const auto [m, info] = testing::random_model(5);
  const Dynamics dyn(m, info);
  const HashedBehaviorStrategy g(1);
  const auto a = evaluate_monte_carlo(dyn, g, 4, 200, 17);
  const auto b = evaluate_monte_carlo(dyn, g, 4, 200, 17);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

// Property: sampled means lie within four standard errors of the exact value
// on fixed seeds (the seeds are pinned, so the check cannot flake).
TEST(MonteCarlo, AgreesWithExactEvaluation) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto [m, info] = testing::random_model(seed);
    const Dynamics dyn(m, info);
    const HashedBehaviorStrategy g(seed);
    const auto ex = evaluate_exact(dyn, g, 4);
    const auto mc = evaluate_monte_carlo(dyn, g, 4, 400, seed);
    for (int i = 0; i < m.num_players(); ++i) {
      EXPECT_LE(std::abs(mc.mean[i] - ex[i].center), 4.0 * mc.std_error[i] + 1e-12)
          << "seed " << seed << " player " << i;
    }
  }
}

ModelPair single_player_local_model(std::uint64_t seed) {
  Rng rng(seed);
  Example1Spec spec;
  spec.global_states = 1;
  spec.local_states = {2};
  spec.actions = {2};
  spec.transition = testing::random_rows(rng, 4, 2, 0.2);
  spec.rewards = testing::random_rewards(rng, 4);
  spec.prior = rng.simplex(2);
  spec.discount = 0.6;
  return make_example1_model(spec);
}

TEST(BestResponseG2, SinglePlayerMatchesPolicyTreeSearch) {
  const UniformStrategy nobody;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (const auto& [m, info] :
         {single_player_local_model(seed), testing::random_public_signal(seed, 1)}) {
      const Dynamics dyn(m, info);
      const double want = testing::policy_tree_best_value(m, info, nobody, 0, 2);
      EXPECT_NEAR(best_response_G2(dyn, nobody, 0, 2).center, want, 1e-12);
    }
  }
}

TEST(BestResponseG2, TwoPlayersMatchPolicyTreeSearch) {
  const auto [m, info] = make_dobrushin_model(0.6, 0.7);
  const Dynamics dyn(m, info);
  const HashedBehaviorStrategy others(4);
  for (int i = 0; i < 2; ++i) {
    const double want = testing::policy_tree_best_value(m, info, others, i, 2);
    EXPECT_NEAR(best_response_G2(dyn, others, i, 2).center, want, 1e-12);
  }
}

TEST(BestResponseG2, MyopicWhenDiscountIsZero) {
  auto [m, info] = testing::random_public_signal(21);
  m.discount = 0.0;
  const Dynamics dyn(m, info);
  const UniformStrategy uni;
  const int S = m.num_states(), A0 = m.num_actions(0), A1 = m.num_actions(1);
  double want = -1e300;
  for (int a0 = 0; a0 < A0; ++a0) {
    double v = 0.0;
    for (int s = 0; s < S; ++s) {
      for (int a1 = 0; a1 < A1; ++a1) v += m.prior[s] * m.reward(0, s, a0 * A1 + a1) / A1;
    }
    want = std::max(want, v);
  }
  EXPECT_NEAR(best_response_G2(dyn, uni, 0, 3).center, want, 1e-14);
}

TEST(BestResponseG2, DominantPathValue) {
  const double d = 0.5;
  const auto [m, info] = testing::dominant_model(d);
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 0);
  const auto rep = fictitious_play(g, 10, 1e-12);
  const LiftedStrategy lifted = lift(g, rep.profile);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(best_response_G2(dyn, lifted, i, 5).center, (1 - std::pow(d, 5)) / (1 - d), 1e-14);
  }
}

// Property: the unrestricted best response dominates every lifted strategy.
TEST(BestResponseG2, DominatesLiftedStrategies) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto [m, info] = testing::random_model(seed);
    const Dynamics dyn(m, info);
    const TruncatedGame g = build_truncated_game(dyn, 1);
    for (int k = 0; k < 3; ++k) {
      const LiftedStrategy lifted = lift(g, random_profile(g, seed * 10 + k));
      const auto values = evaluate_exact(dyn, lifted, 3);
      for (int i = 0; i < g.num_players; ++i) {
        EXPECT_GE(best_response_G2(dyn, lifted, i, 3).center, values[i].center - 1e-9);
      }
    }
  }
}

TEST(Certificate, TheoryFormulas) {
  const auto e = theory_epsilon(0.1, {0.1, 0.1}, 1.0, 0.5);
  EXPECT_DOUBLE_EQ(e.xi, 0.8);
  EXPECT_DOUBLE_EQ(e.kappa, 1.6);
  EXPECT_DOUBLE_EQ(e.epsilon, 3.2);
  const auto zero = theory_epsilon(0.0, {0.0, 0.0}, 2.0, 0.5);
  EXPECT_EQ(zero.epsilon, 0.0);
  EXPECT_DOUBLE_EQ(gap_tail_bound(0.5, 6, 1.0), 0.0625);
  EXPECT_DOUBLE_EQ(gap_tail_bound(0.5, 6, 2.0), 0.125);
}

TEST(Certificate, MiniMatchingPenniesHolds) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  const auto rep = solve_zero_sum(g);
  const auto curve = estimate_forgetting(dyn, 1);
  const auto certs = certify_epsilon_nash(dyn, g, rep, curve, 4);
  ASSERT_EQ(certs.size(), 2u);
  for (const auto& c : certs) {
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.epsilon_theory, 0.0);
    EXPECT_LE(c.measured_gap, 2.0 * c.tail_bound + 1e-12);
    EXPECT_LE(c.lifted_lo, c.lifted_hi);
    EXPECT_FALSE(c.caveat.empty());
  }
}

TEST(Certificate, RequiresAnEquilibrium) {
  const auto [m, info] = make_dobrushin_model();
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  SolveReport rep;
  rep.profile = random_profile(g, 3);
  rep.values = policy_values(g, rep.profile);
  rep.exploitability = exploitability(g, rep.profile);
  ASSERT_GT(rep.max_exploitability(), 1e-6);
  EXPECT_THROW(certify_epsilon_nash(dyn, g, rep, estimate_forgetting(dyn, 1), 3), NotCertified);
}

TEST(ValueApprox, OneStepForgettingModel) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  const auto curve = estimate_forgetting(dyn, 2);
  for (int ell = 1; ell <= 2; ++ell) {
    const TruncatedGame g = build_truncated_game(dyn, ell);
    for (std::uint64_t k = 0; k < 3; ++k) {
      for (const auto& c : validate_value_approx(dyn, g, random_profile(g, k), curve, 5)) {
        EXPECT_TRUE(c.ok());
        EXPECT_LE(c.difference, gap_tail_bound(m.discount, 5, m.reward_bound()) + 1e-12);
      }
    }
  }
}

TEST(ValueApprox, SingleStateModelIsExact) {
  const auto [m, info] = testing::dominant_model(0.5);
  const Dynamics dyn(m, info);
  const auto curve = estimate_forgetting(dyn, 1);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  for (const auto& c : validate_value_approx(dyn, g, random_profile(g, 2), curve, 6)) {
    EXPECT_LE(c.difference, tail_term(0.5, 6, 1.0) + 1e-12);
  }
}

TEST(RestrictionLoss, NonNegativeUpToBrackets) {
  const auto [m, info] = make_dobrushin_model();
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  const auto loss = restriction_loss(dyn, g, uniform_profile(g), 0, 3);
  EXPECT_GE(loss.loss(), -1e-9);
  EXPECT_GT(loss.width(), 0.0);
}

}  // namespace
}  // namespace pomg
