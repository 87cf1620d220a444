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

#ifndef POMG_ASSUMPTIONS_HPP_
#define POMG_ASSUMPTIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pomg/belief.hpp"
#include "pomg/core.hpp"
#include "pomg/dynamics.hpp"
#include "pomg/filter.hpp"
#include "pomg/strategy.hpp"

namespace pomg {

struct IndependenceReport {
  double max_discrepancy = 0.0;
  bool pass = true;
  std::size_t histories_compared = 0;
  int horizon = 0;
  int trials = 0;
};

namespace detail {

inline void independence_dfs(const Dynamics& dyn, const Strategy& g1, const Strategy& g2,
                             std::vector<int>& common, const Belief& b1, const Belief& b2,
                             int horizon, NodeCounter& counter, IndependenceReport& rep) {
  counter.tick();
  ++rep.histories_compared;
  rep.max_discrepancy = std::max(rep.max_discrepancy, tv_distance(b1, b2));
  if (static_cast<int>(common.size()) == horizon) return;
  const StageRule r1 = g1.rule_at(common);
  const StageRule r2 = g2.rule_at(common);
  for (std::size_t z = 0; z < dyn.num_common(); ++z) {
    Belief n1 = bayes_step(dyn, b1, r1, static_cast<int>(z));
    if (!(n1.total_mass() > 0.0)) continue;
    Belief n2 = bayes_step(dyn, b2, r2, static_cast<int>(z));
    if (!(n2.total_mass() > 0.0)) continue;
    n1.normalize();
    n2.normalize();
    common.push_back(static_cast<int>(z));
    independence_dfs(dyn, g1, g2, common, n1, n2, horizon, counter, rep);
    common.pop_back();
  }
}

}  // namespace detail

// Compares public posteriors over (state, private histories) under pairs of
// seeded random full-support behavioral strategies, on every common history
// of length <= horizon reachable under both.
inline IndependenceReport check_strategy_independence(const Dynamics& dyn, int horizon,
                                                      int trials, double tolerance,
                                                      std::uint64_t seed = 0,
                                                      const Budgets& budgets = {}) {
  IndependenceReport rep;
  rep.horizon = horizon;
  rep.trials = trials;
  NodeCounter counter(budgets.nodes, "strategy-independence history tree");
  const Belief root = Belief::over_states(dyn.model().prior);
  for (int k = 0; k < trials; ++k) {
    HashedBehaviorStrategy g1(derive_seed(seed, SeedTag::kIndependence, 2 * k));
    HashedBehaviorStrategy g2(derive_seed(seed, SeedTag::kIndependence, 2 * k + 1));
    std::vector<int> common;
    detail::independence_dfs(dyn, g1, g2, common, root, root, horizon, counter, rep);
  }
  rep.pass = rep.max_discrepancy <= tolerance;
  return rep;
}

}  // namespace pomg

#endif  // POMG_ASSUMPTIONS_HPP_
