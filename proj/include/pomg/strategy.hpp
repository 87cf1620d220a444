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

#ifndef POMG_STRATEGY_HPP_
#define POMG_STRATEGY_HPP_

#include <cstdint>
#include <span>

#include "pomg/core.hpp"
#include "pomg/dynamics.hpp"

namespace pomg {

// A behavioral strategy profile of the original game, indexed by common
// history. The returned rule maps each player's own private history to an
// action distribution.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual StageRule rule_at(std::span<const int> common) const = 0;
  // Number of most recent private stages the rules read; -1 for all of them.
  virtual int memory() const = 0;
};

class UniformStrategy final : public Strategy {
 public:
  StageRule rule_at(std::span<const int>) const override { return uniform_rule(); }
  int memory() const override { return 0; }
};

// Full-support behavioral strategy whose action weights are hashed from
// (seed, player, common history, own private history). Deterministic for a
// fixed seed.
class HashedBehaviorStrategy final : public Strategy {
 public:
  explicit HashedBehaviorStrategy(std::uint64_t seed) : seed_(seed) {}

  StageRule rule_at(std::span<const int> common) const override {
    std::uint64_t h = splitmix64(seed_);
    for (int z : common) h = splitmix64(h ^ (static_cast<std::uint64_t>(z) + 0x51ULL));
    return [h](int player, std::span<const int> own, std::span<double> probs) {
      std::uint64_t k = splitmix64(h ^ (static_cast<std::uint64_t>(player) + 0x9eULL));
      for (int p : own) k = splitmix64(k ^ (static_cast<std::uint64_t>(p) + 0x77ULL));
      Rng rng(k);
      double total = 0.0;
      for (double& x : probs) {
        x = 0.05 / static_cast<double>(probs.size()) + rng.uniform();
        total += x;
      }
      for (double& x : probs) x /= total;
    };
  }
  int memory() const override { return -1; }

 private:
  std::uint64_t seed_;
};

}  // namespace pomg

#endif  // POMG_STRATEGY_HPP_
