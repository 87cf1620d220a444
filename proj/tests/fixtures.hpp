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

// Seeded model generators shared by the unit tests and the acceptance binary.

#ifndef POMG_TESTS_FIXTURES_HPP_
#define POMG_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "pomg/core.hpp"
#include "pomg/model.hpp"

namespace pomg::testing {

using ModelPair = std::pair<PomgModel, InfoStructure>;

// `rows` stochastic rows; each entry is zeroed with probability `sparsity`,
// keeping at least one positive entry per row.
inline std::vector<double> random_rows(Rng& rng, std::size_t rows, std::size_t width,
                                       double sparsity) {
  std::vector<double> out;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> row(width);
    double total = 0.0;
    for (auto& x : row) {
      x = rng.uniform() < sparsity ? 0.0 : 0.05 + rng.uniform();
      total += x;
    }
    if (total == 0.0) {
      row[static_cast<std::size_t>(rng.below(static_cast<int>(width)))] = 1.0;
      total = 1.0;
    }
    for (double x : row) out.push_back(x / total);
  }
  return out;
}

inline std::vector<double> random_rewards(Rng& rng, std::size_t count) {
  std::vector<double> out(count);
  for (auto& x : out) x = rng.uniform(-1.0, 1.0);
  return out;
}

// Two players, at most 3 composite states, at most 2 actions each. Local
// states appear only when `local_states` is set.
inline ModelPair random_example1(std::uint64_t seed, bool local_states) {
  Rng rng(derive_seed(seed, SeedTag::kModels, 1));
  Example1Spec spec;
  spec.actions = {1 + rng.below(2), 1 + rng.below(2)};
  if (local_states) {
    spec.global_states = 1;
    spec.local_states = {1, 1};
    spec.local_states[static_cast<std::size_t>(rng.below(2))] = 2 + rng.below(2);
  } else {
    spec.global_states = 2 + rng.below(2);
    spec.local_states = {1, 1};
  }
  const std::size_t S = static_cast<std::size_t>(spec.global_states * spec.local_states[0] *
                                                 spec.local_states[1]);
  const std::size_t A = static_cast<std::size_t>(spec.actions[0] * spec.actions[1]);
  spec.transition = random_rows(rng, S * A, S, 0.3);
  spec.rewards = random_rewards(rng, 2 * S * A);
  spec.prior = rng.simplex(static_cast<int>(S));
  spec.discount = rng.uniform(0.3, 0.8);
  return make_example1_model(spec);
}

// Hidden state behind one noisy public signal; no private information.
inline ModelPair random_public_signal(std::uint64_t seed, int players = 2) {
  Rng rng(derive_seed(seed, SeedTag::kModels, 2));
  PublicSignalSpec spec;
  spec.states = 2 + rng.below(2);
  spec.signals = 2;
  for (int i = 0; i < players; ++i) spec.actions.push_back(1 + rng.below(2));
  std::size_t A = 1;
  for (int a : spec.actions) A *= static_cast<std::size_t>(a);
  const std::size_t S = static_cast<std::size_t>(spec.states);
  spec.transition = random_rows(rng, S * A, S, 0.3);
  spec.signal = random_rows(rng, S, 2, 0.0);
  spec.rewards = random_rewards(rng, static_cast<std::size_t>(players) * S * A);
  spec.prior = rng.simplex(spec.states);
  spec.discount = rng.uniform(0.3, 0.8);
  return make_public_signal_model(spec);
}

// Models whose public posterior does not depend on the strategy.
inline ModelPair random_independent_model(std::uint64_t seed) {
  return seed % 2 == 0 ? random_example1(seed, false) : random_public_signal(seed);
}

inline ModelPair random_model(std::uint64_t seed) {
  switch (seed % 3) {
    case 0: return random_example1(seed, false);
    case 1: return random_example1(seed, true);
    default: return random_public_signal(seed);
  }
}

// One player whose action sets the next state; the public increment is a
// noisy reading of the state and does not reveal the action.
inline ModelPair hidden_action_model() {
  PomgModel m;
  InfoStructure info;
  m.players = {"p0"};
  m.states = {"s0", "s1"};
  m.actions = {{"a0", "a1"}};
  m.observations = {{"y0", "y1"}};
  m.transition = {1, 0, 0, 1, 1, 0, 0, 1};  // s' = a
  m.emission = {0.8, 0.2, 0.2, 0.8};
  m.rewards = {0, 0, 0, 0};
  m.prior = {0.5, 0.5};
  m.discount = 0.5;
  info.common_alphabet = {"y0", "y1"};
  info.private_alphabets = {{"-"}};
  info.common_update.assign(2 * 2 * 2, 0.0);
  for (int a = 0; a < 2; ++a) {
    for (int o = 0; o < 2; ++o) info.common_update[(a * 2 + o) * 2 + o] = 1.0;
  }
  info.private_updates = {std::vector<double>(4, 1.0)};
  info.initial_private = {0};
  return {m, info};
}

// One state, one action per player, constant reward `c` for every player.
inline ModelPair constant_model(int players, double c, double discount) {
  PublicSignalSpec spec;
  spec.states = 1;
  spec.signals = 1;
  spec.actions.assign(static_cast<std::size_t>(players), 1);
  spec.transition = {1.0};
  spec.signal = {1.0};
  spec.rewards.assign(static_cast<std::size_t>(players), c);
  spec.discount = discount;
  return make_public_signal_model(spec);
}

// One state, two actions per player, r_i = 1 when player i plays a0.
inline ModelPair dominant_model(double discount) {
  PublicSignalSpec spec;
  spec.states = 1;
  spec.signals = 1;
  spec.actions = {2, 2};
  spec.transition = {1, 1, 1, 1};
  spec.signal = {1.0};
  spec.rewards = {1, 1, 0, 0,   // player 0: a = (a0, a1)
                  1, 0, 1, 0};  // player 1
  spec.discount = discount;
  return make_public_signal_model(spec);
}

}  // namespace pomg::testing

#endif  // POMG_TESTS_FIXTURES_HPP_
