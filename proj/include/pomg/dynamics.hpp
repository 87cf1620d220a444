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

#ifndef POMG_DYNAMICS_HPP_
#define POMG_DYNAMICS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "pomg/belief.hpp"
#include "pomg/core.hpp"
#include "pomg/model.hpp"

namespace pomg {

// Action distribution every player uses at one stage, as a function of that
// player's own private history (oldest increment first). `probs` has one slot
// per action of `player` and must be filled with a distribution.
using StageRule =
    std::function<void(int player, std::span<const int> own_history, std::span<double> probs)>;

inline StageRule uniform_rule() {
  return [](int, std::span<const int>, std::span<double> probs) {
    const double u = 1.0 / static_cast<double>(probs.size());
    for (double& p : probs) p = u;
  };
}

// Sparse, precomputed view of a validated (model, info) pair.
class Dynamics {
 public:
  struct Out {
    int index;
    double prob;
  };

  Dynamics(const PomgModel& model, const InfoStructure& info)
      : model_(&model),
        info_(&info),
        actions_(model.action_indexer()),
        observations_(model.observation_indexer()),
        privates_(info.private_indexer()) {
    n_ = model.num_players();
    S_ = model.num_states();
    A_ = actions_.size();
    O_ = observations_.size();
    C_ = info.common_alphabet.size();
    P_ = privates_.size();

    action_parts_.resize(A_ * static_cast<std::size_t>(n_));
    for (std::size_t a = 0; a < A_; ++a) actions_.unflatten(a, {&action_parts_[a * n_], static_cast<std::size_t>(n_)});
    obs_parts_.resize(O_ * static_cast<std::size_t>(n_));
    for (std::size_t o = 0; o < O_; ++o) observations_.unflatten(o, {&obs_parts_[o * n_], static_cast<std::size_t>(n_)});
    private_parts_.resize(P_ * static_cast<std::size_t>(n_));
    for (std::size_t p = 0; p < P_; ++p) privates_.unflatten(p, {&private_parts_[p * n_], static_cast<std::size_t>(n_)});

    // s' | s, a
    next_offsets_.push_back(0);
    for (int s = 0; s < S_; ++s) {
      for (std::size_t a = 0; a < A_; ++a) {
        const double* row = &model.transition[(static_cast<std::size_t>(s) * A_ + a) * S_];
        for (int s2 = 0; s2 < S_; ++s2) {
          if (row[s2] > 0.0) next_.push_back({s2, row[s2]});
        }
        next_offsets_.push_back(next_.size());
      }
    }
    // o | s'
    obs_offsets_.push_back(0);
    for (int s = 0; s < S_; ++s) {
      for (std::size_t o = 0; o < O_; ++o) {
        double z = model.emission[static_cast<std::size_t>(s) * O_ + o];
        if (z > 0.0) obs_.push_back({static_cast<int>(o), z});
      }
      obs_offsets_.push_back(obs_.size());
    }
    // z | p_last, a, o
    common_offsets_.push_back(0);
    for (std::size_t row = 0; row < P_ * A_ * O_; ++row) {
      for (std::size_t z = 0; z < C_; ++z) {
        double w = info.common_update[row * C_ + z];
        if (w > 0.0) common_.push_back({static_cast<int>(z), w});
      }
      common_offsets_.push_back(common_.size());
    }
    // joint p+ | p_last, a, o  (product of the per-player kernels)
    private_offsets_.push_back(0);
    for (std::size_t p = 0; p < P_; ++p) {
      for (std::size_t a = 0; a < A_; ++a) {
        for (std::size_t o = 0; o < O_; ++o) {
          std::vector<Out> cur{{0, 1.0}};
          for (int i = 0; i < n_; ++i) {
            const int Pi = info.num_private(i);
            const int Ai = model.num_actions(i);
            const int Oi = model.num_observations(i);
            const int pi = private_parts_[p * n_ + i];
            const int ai = action_parts_[a * n_ + i];
            const int oi = obs_parts_[o * n_ + i];
            const double* row =
                &info.private_updates[i][((static_cast<std::size_t>(pi) * Ai + ai) * Oi + oi) * Pi];
            std::vector<Out> nxt;
            for (const Out& c : cur) {
              for (int q = 0; q < Pi; ++q) {
                if (row[q] > 0.0) nxt.push_back({c.index * Pi + q, c.prob * row[q]});
              }
            }
            cur = std::move(nxt);
          }
          private_.insert(private_.end(), cur.begin(), cur.end());
          private_offsets_.push_back(private_.size());
        }
      }
    }
    initial_private_joint_ = privates_.flatten(info.initial_private);
  }

  const PomgModel& model() const { return *model_; }
  const InfoStructure& info() const { return *info_; }
  int num_players() const { return n_; }
  int num_states() const { return S_; }
  std::size_t num_joint_actions() const { return A_; }
  std::size_t num_joint_observations() const { return O_; }
  std::size_t num_common() const { return C_; }
  std::size_t num_joint_private() const { return P_; }
  const JointIndexer& actions() const { return actions_; }
  const JointIndexer& observations() const { return observations_; }
  const JointIndexer& privates() const { return privates_; }

  int action_part(std::size_t a, int i) const { return action_parts_[a * n_ + i]; }
  int obs_part(std::size_t o, int i) const { return obs_parts_[o * n_ + i]; }
  int private_part(std::size_t p, int i) const { return private_parts_[p * n_ + i]; }

  std::span<const Out> next_states(int s, std::size_t a) const {
    std::size_t r = static_cast<std::size_t>(s) * A_ + a;
    return {next_.data() + next_offsets_[r], next_offsets_[r + 1] - next_offsets_[r]};
  }
  std::span<const Out> observations_of(int s) const {
    return {obs_.data() + obs_offsets_[s], obs_offsets_[s + 1] - obs_offsets_[s]};
  }
  std::span<const Out> common_increments(std::size_t p_last, std::size_t a, std::size_t o) const {
    std::size_t r = (p_last * A_ + a) * O_ + o;
    return {common_.data() + common_offsets_[r], common_offsets_[r + 1] - common_offsets_[r]};
  }
  double common_prob(std::size_t p_last, std::size_t a, std::size_t o, std::size_t z) const {
    return info_->common_update[((p_last * A_ + a) * O_ + o) * C_ + z];
  }
  std::span<const Out> private_increments(std::size_t p_last, std::size_t a, std::size_t o) const {
    std::size_t r = (p_last * A_ + a) * O_ + o;
    return {private_.data() + private_offsets_[r], private_offsets_[r + 1] - private_offsets_[r]};
  }

  // Joint index of the most recent private increment profile of a point.
  std::size_t last_private(const Point& p) const {
    if (p.history.empty()) return initial_private_joint_;
    std::size_t idx = 0;
    const std::size_t base = p.history.size() - static_cast<std::size_t>(n_);
    for (int i = 0; i < n_; ++i) {
      idx = idx * static_cast<std::size_t>(info_->num_private(i)) +
            static_cast<std::size_t>(p.history[base + i]);
    }
    return idx;
  }

  double reward(int player, int s, std::size_t a) const {
    return model_->rewards[(static_cast<std::size_t>(player) * S_ + s) * A_ + a];
  }

  // Expands each player's action distribution into positive-probability joint
  // actions, calling fn(joint_action, probability).
  template <class Fn>
  void for_each_joint_action(const std::vector<std::vector<double>>& per_player, Fn&& fn) const {
    std::vector<int> idx(n_, 0);
    std::vector<std::vector<int>> support(n_);
    for (int i = 0; i < n_; ++i) {
      for (int a = 0; a < static_cast<int>(per_player[i].size()); ++a) {
        if (per_player[i][a] > 0.0) support[i].push_back(a);
      }
      if (support[i].empty()) return;
    }
    while (true) {
      std::size_t joint = 0;
      double prob = 1.0;
      for (int i = 0; i < n_; ++i) {
        int a = support[i][idx[i]];
        joint = joint * static_cast<std::size_t>(model_->num_actions(i)) + static_cast<std::size_t>(a);
        prob *= per_player[i][a];
      }
      fn(joint, prob);
      int i = n_ - 1;
      while (i >= 0 && ++idx[i] == static_cast<int>(support[i].size())) {
        idx[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }

 private:
  const PomgModel* model_;
  const InfoStructure* info_;
  JointIndexer actions_, observations_, privates_;
  int n_ = 0, S_ = 0;
  std::size_t A_ = 0, O_ = 0, C_ = 0, P_ = 0;
  std::vector<int> action_parts_, obs_parts_, private_parts_;
  std::vector<Out> next_, obs_, common_, private_;
  std::vector<std::size_t> next_offsets_, obs_offsets_, common_offsets_, private_offsets_;
  std::size_t initial_private_joint_ = 0;
};

}  // namespace pomg

#endif  // POMG_DYNAMICS_HPP_
