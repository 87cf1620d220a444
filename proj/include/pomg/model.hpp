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

// Finite partially observable Markov game primitives and the information
// structure (common / private increments) layered on top of them.

#ifndef POMG_MODEL_HPP_
#define POMG_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pomg/core.hpp"

namespace pomg {

// All tensors are dense and indexed by label position in declaration order.
// Joint actions and joint observations are flattened row-major in player order.
struct PomgModel {
  std::vector<std::string> players;
  std::vector<std::string> states;
  std::vector<std::vector<std::string>> actions;       // per player
  std::vector<std::vector<std::string>> observations;  // per player
  std::vector<double> transition;                      // [s][a][s']
  std::vector<double> emission;                        // [s][o]
  std::vector<double> rewards;                         // [i][s][a]
  std::vector<double> prior;                           // [s]
  double discount = 0.0;

  int num_players() const { return static_cast<int>(players.size()); }
  int num_states() const { return static_cast<int>(states.size()); }
  int num_actions(int i) const { return static_cast<int>(actions[i].size()); }
  int num_observations(int i) const { return static_cast<int>(observations[i].size()); }

  JointIndexer action_indexer() const {
    std::vector<int> r;
    for (const auto& a : actions) r.push_back(static_cast<int>(a.size()));
    return JointIndexer(std::move(r));
  }
  JointIndexer observation_indexer() const {
    std::vector<int> r;
    for (const auto& o : observations) r.push_back(static_cast<int>(o.size()));
    return JointIndexer(std::move(r));
  }
  std::size_t num_joint_actions() const { return action_indexer().size(); }
  std::size_t num_joint_observations() const { return observation_indexer().size(); }

  double T(int s, std::size_t a, int s_next) const {
    return transition[(static_cast<std::size_t>(s) * num_joint_actions() + a) * states.size() +
                      static_cast<std::size_t>(s_next)];
  }
  double Z(int s, std::size_t o) const {
    return emission[static_cast<std::size_t>(s) * num_joint_observations() + o];
  }
  double reward(int player, int s, std::size_t a) const {
    return rewards[(static_cast<std::size_t>(player) * states.size() +
                    static_cast<std::size_t>(s)) *
                       num_joint_actions() +
                   a];
  }

  // max_{i,s,a} |r_i(s,a)|, always recomputed from the table.
  double reward_bound() const {
    double r = 0.0;
    for (double x : rewards) r = std::max(r, std::abs(x));
    return r;
  }
};

// Increment alphabets and time-homogeneous update kernels. Kernels condition
// on the most recent private increment only; `initial_private` names the
// increment used as "most recent" while a private history is still empty.
struct InfoStructure {
  std::vector<std::string> common_alphabet;                 // C+
  std::vector<std::vector<std::string>> private_alphabets;  // P_i+
  std::vector<double> common_update;                 // [p_last joint][a joint][o joint][z]
  std::vector<std::vector<double>> private_updates;  // [i] -> [p_last][a_i][o_i][p+]
  std::vector<int> initial_private;                  // per player, index into P_i+
  std::optional<std::vector<int>> action_reveal;     // z -> joint action

  int num_common() const { return static_cast<int>(common_alphabet.size()); }
  int num_private(int i) const { return static_cast<int>(private_alphabets[i].size()); }

  JointIndexer private_indexer() const {
    std::vector<int> r;
    for (const auto& p : private_alphabets) r.push_back(static_cast<int>(p.size()));
    return JointIndexer(std::move(r));
  }
};

// One realization of common and private information at stage `time`.
struct HistoryPoint {
  std::vector<int> common;                 // C+ symbols, oldest first
  std::vector<std::vector<int>> privates;  // per player P_i+ symbols
  int time = 0;

  bool well_formed() const {
    if (static_cast<int>(common.size()) != time) return false;
    return std::all_of(privates.begin(), privates.end(),
                       [&](const auto& p) { return p.size() == common.size(); });
  }
};

struct Violation {
  std::string invariant;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const {
    std::string out;
    for (const auto& v : violations) out += v.invariant + ": " + v.detail + "\n";
    return out;
  }
};

namespace detail {

inline std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Checks `rows` consecutive rows of width `width` starting at data[0].
inline void check_rows(const std::vector<double>& data, std::size_t rows, std::size_t width,
                       const std::string& invariant,
                       const std::function<std::string(std::size_t)>& row_name,
                       ValidationReport& report) {
  for (std::size_t r = 0; r < rows; ++r) {
    double total = 0.0;
    bool negative = false;
    for (std::size_t c = 0; c < width; ++c) {
      double x = data[r * width + c];
      if (!(x >= 0.0)) negative = true;
      total += x;
    }
    if (negative) {
      report.violations.push_back({invariant, row_name(r) + " has a negative or NaN entry"});
    }
    if (!(std::abs(total - 1.0) <= kKernelTol)) {
      report.violations.push_back(
          {invariant, row_name(r) + " sums to " + fmt_double(total)});
    }
  }
}

}  // namespace detail

// Lists every violated invariant; an empty report means the pair is valid.
inline ValidationReport validate_model(const PomgModel& m, const InfoStructure& info) {
  ValidationReport rep;
  auto add = [&](std::string inv, std::string d) {
    rep.violations.push_back({std::move(inv), std::move(d)});
  };

  const int n = m.num_players();
  if (n < 1) add("players", "at least one player is required");
  if (m.states.empty()) add("states", "state set is empty");
  if (static_cast<int>(m.actions.size()) != n) add("actions", "one action set per player required");
  if (static_cast<int>(m.observations.size()) != n) {
    add("observations", "one observation set per player required");
  }
  for (std::size_t i = 0; i < m.actions.size(); ++i) {
    if (m.actions[i].empty()) add("actions", "player " + std::to_string(i) + " has no actions");
  }
  for (std::size_t i = 0; i < m.observations.size(); ++i) {
    if (m.observations[i].empty()) {
      add("observations", "player " + std::to_string(i) + " has no observations");
    }
  }
  if (!rep.ok()) return rep;

  const std::size_t S = m.states.size();
  const JointIndexer aidx = m.action_indexer();
  const JointIndexer oidx = m.observation_indexer();
  const std::size_t A = aidx.size();
  const std::size_t O = oidx.size();

  if (m.transition.size() != S * A * S) {
    add("transition shape", "expected " + std::to_string(S * A * S) + " entries, got " +
                                std::to_string(m.transition.size()));
  } else {
    detail::check_rows(m.transition, S * A, S, "transition row sum",
                       [&](std::size_t r) {
                         return "transition[s=" + std::to_string(r / A) +
                                "][a=" + std::to_string(r % A) + "]";
                       },
                       rep);
  }
  if (m.emission.size() != S * O) {
    add("emission shape", "expected " + std::to_string(S * O) + " entries, got " +
                              std::to_string(m.emission.size()));
  } else {
    detail::check_rows(m.emission, S, O, "emission row sum",
                       [](std::size_t r) { return "emission[s=" + std::to_string(r) + "]"; },
                       rep);
  }
  if (m.rewards.size() != static_cast<std::size_t>(n) * S * A) {
    add("rewards shape", "expected " + std::to_string(n * S * A) + " entries, got " +
                             std::to_string(m.rewards.size()));
  } else if (std::any_of(m.rewards.begin(), m.rewards.end(),
                         [](double x) { return !std::isfinite(x); })) {
    add("rewards", "non-finite reward entry");
  }
  if (m.prior.size() != S) {
    add("prior shape", "expected " + std::to_string(S) + " entries");
  } else {
    detail::check_rows(m.prior, 1, S, "prior sum", [](std::size_t) { return "prior"; }, rep);
  }
  if (!(m.discount >= 0.0 && m.discount < 1.0)) {
    add("discount", "discount " + detail::fmt_double(m.discount) + " is outside [0, 1)");
  }

  // Information structure.
  if (info.common_alphabet.empty()) add("info.common_alphabet", "alphabet is empty");
  if (static_cast<int>(info.private_alphabets.size()) != n) {
    add("info.private_alphabets", "one private alphabet per player required");
    return rep;
  }
  for (int i = 0; i < n; ++i) {
    if (info.private_alphabets[i].empty()) {
      add("info.private_alphabets", "player " + std::to_string(i) + " alphabet is empty");
    }
  }
  if (!rep.ok() && info.common_alphabet.empty()) return rep;
  for (int i = 0; i < n; ++i) {
    if (info.private_alphabets[i].empty()) return rep;
  }

  const std::size_t C = info.common_alphabet.size();
  const JointIndexer pidx = info.private_indexer();
  const std::size_t P = pidx.size();
  if (info.common_update.size() != P * A * O * C) {
    add("common_update shape", "expected " + std::to_string(P * A * O * C) + " entries, got " +
                                   std::to_string(info.common_update.size()));
  } else {
    detail::check_rows(info.common_update, P * A * O, C, "common_update row sum",
                       [&](std::size_t r) {
                         return "common_update[p=" + std::to_string(r / (A * O)) +
                                "][a=" + std::to_string((r / O) % A) +
                                "][o=" + std::to_string(r % O) + "]";
                       },
                       rep);
  }
  if (static_cast<int>(info.private_updates.size()) != n) {
    add("private_updates", "one private kernel per player required");
  } else {
    for (int i = 0; i < n; ++i) {
      const std::size_t Pi = info.private_alphabets[i].size();
      const std::size_t Ai = m.actions[i].size();
      const std::size_t Oi = m.observations[i].size();
      if (info.private_updates[i].size() != Pi * Ai * Oi * Pi) {
        add("private_update shape", "player " + std::to_string(i) + ": expected " +
                                        std::to_string(Pi * Ai * Oi * Pi) + " entries");
        continue;
      }
      detail::check_rows(info.private_updates[i], Pi * Ai * Oi, Pi, "private_update row sum",
                         [&](std::size_t r) {
                           return "private_update[" + std::to_string(i) +
                                  "][p=" + std::to_string(r / (Ai * Oi)) +
                                  "][a=" + std::to_string((r / Oi) % Ai) +
                                  "][o=" + std::to_string(r % Oi) + "]";
                         },
                         rep);
    }
  }
  if (static_cast<int>(info.initial_private.size()) != n) {
    add("info.initial_private", "one initial private increment per player required");
  } else {
    for (int i = 0; i < n; ++i) {
      if (info.initial_private[i] < 0 || info.initial_private[i] >= info.num_private(i)) {
        add("info.initial_private", "player " + std::to_string(i) + " index out of range");
      }
    }
  }
  if (info.action_reveal) {
    const auto& act = *info.action_reveal;
    if (act.size() != C) {
      add("action_reveal shape", "expected one joint action per common increment");
    } else if (std::any_of(act.begin(), act.end(), [&](int a) {
                 return a < 0 || static_cast<std::size_t>(a) >= A;
               })) {
      add("action_reveal", "joint action index out of range");
    } else if (info.common_update.size() == P * A * O * C) {
      for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t a = 0; a < A; ++a) {
          for (std::size_t o = 0; o < O; ++o) {
            for (std::size_t z = 0; z < C; ++z) {
              double w = info.common_update[((p * A + a) * O + o) * C + z];
              if (w > 0.0 && static_cast<std::size_t>(act[z]) != a) {
                add("action_reveal consistency",
                    "common_update[p=" + std::to_string(p) + "][a=" + std::to_string(a) +
                        "][o=" + std::to_string(o) + "] puts mass on increment " +
                        std::to_string(z) + " which reveals joint action " +
                        std::to_string(act[z]));
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

// Built-in model families ----------------------------------------------------

// Global state s0 shared by all players plus one local state per player. Each
// player observes (s0, own local state); the common increment is
// (s0, previous joint action) and the private increment is the local state.
struct Example1Spec {
  int global_states = 1;
  std::vector<int> local_states;  // per player, 1 = no local state
  std::vector<int> actions;       // per player
  std::vector<double> transition; // [s][a][s'] over composite states; empty = uniform
  std::vector<double> rewards;    // [i][s][a]; empty = zero
  std::vector<double> prior;      // empty = uniform
  double discount = 0.5;
};

inline std::pair<PomgModel, InfoStructure> make_example1_model(const Example1Spec& spec,
                                                                const Budgets& budgets = {}) {
  const int n = static_cast<int>(spec.actions.size());
  if (n < 1 || static_cast<int>(spec.local_states.size()) != n || spec.global_states < 1) {
    throw Error("example-1 model needs one local-state count and one action count per player");
  }
  std::vector<int> sizes{spec.global_states};
  for (int l : spec.local_states) sizes.push_back(l);
  const std::size_t S = checked_product(sizes, budgets.sizes, "state space");
  const std::size_t A = checked_product(spec.actions, budgets.sizes, "joint action space");
  const JointIndexer state_idx(sizes);
  const JointIndexer local_idx(spec.local_states);
  const std::size_t L = local_idx.size();

  PomgModel m;
  InfoStructure info;
  for (int i = 0; i < n; ++i) m.players.push_back("p" + std::to_string(i));
  for (std::size_t s = 0; s < S; ++s) {
    auto c = state_idx.unflatten(s);
    std::string label = "g" + std::to_string(c[0]);
    for (int i = 0; i < n; ++i) {
      if (spec.local_states[i] > 1) label += ".l" + std::to_string(c[i + 1]);
    }
    m.states.push_back(label);
  }
  m.actions.resize(n);
  m.observations.resize(n);
  for (int i = 0; i < n; ++i) {
    if (spec.actions[i] < 1 || spec.local_states[i] < 1) throw Error("sizes must be >= 1");
    for (int a = 0; a < spec.actions[i]; ++a) m.actions[i].push_back("a" + std::to_string(a));
    for (int g = 0; g < spec.global_states; ++g) {
      for (int l = 0; l < spec.local_states[i]; ++l) {
        m.observations[i].push_back("g" + std::to_string(g) + "/l" + std::to_string(l));
      }
    }
  }
  const JointIndexer aidx = m.action_indexer();
  const JointIndexer oidx = m.observation_indexer();
  const std::size_t O = oidx.size();
  {
    std::size_t entries = S * A * S;
    if (entries > budgets.kernel_entries) throw SizeOverflow("transition table exceeds budget");
  }

  if (spec.transition.empty()) {
    m.transition.assign(S * A * S, 1.0 / static_cast<double>(S));
  } else {
    if (spec.transition.size() != S * A * S) throw Error("transition table has wrong size");
    m.transition = spec.transition;
  }
  if (spec.rewards.empty()) {
    m.rewards.assign(static_cast<std::size_t>(n) * S * A, 0.0);
  } else {
    if (spec.rewards.size() != static_cast<std::size_t>(n) * S * A) {
      throw Error("reward table has wrong size");
    }
    m.rewards = spec.rewards;
  }
  if (spec.prior.empty()) {
    m.prior.assign(S, 1.0 / static_cast<double>(S));
  } else {
    if (spec.prior.size() != S) throw Error("prior has wrong size");
    m.prior = spec.prior;
  }
  m.discount = spec.discount;

  // o_i = (s0, s_i), deterministic.
  m.emission.assign(S * O, 0.0);
  std::vector<int> ocoords(n);
  for (std::size_t s = 0; s < S; ++s) {
    auto c = state_idx.unflatten(s);
    for (int i = 0; i < n; ++i) ocoords[i] = c[0] * spec.local_states[i] + c[i + 1];
    m.emission[s * O + oidx.flatten(ocoords)] = 1.0;
  }

  // z = (s0, a), p_i+ = s_i.
  for (int g = 0; g < spec.global_states; ++g) {
    for (std::size_t a = 0; a < A; ++a) {
      auto ac = aidx.unflatten(a);
      std::string label = "g" + std::to_string(g) + "|";
      for (int i = 0; i < n; ++i) label += (i ? "," : "") + m.actions[i][ac[i]];
      info.common_alphabet.push_back(label);
    }
  }
  info.private_alphabets.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l < spec.local_states[i]; ++l) {
      info.private_alphabets[i].push_back("l" + std::to_string(l));
    }
  }
  const std::size_t C = info.common_alphabet.size();
  const std::size_t P = L;  // joint private alphabet is the joint local state
  if (P * A * O * C > budgets.kernel_entries) {
    throw SizeOverflow("common update kernel exceeds budget");
  }
  info.common_update.assign(P * A * O * C, 0.0);
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t a = 0; a < A; ++a) {
      for (std::size_t o = 0; o < O; ++o) {
        int g = oidx.component(o, 0) / spec.local_states[0];
        std::size_t z = static_cast<std::size_t>(g) * A + a;
        info.common_update[((p * A + a) * O + o) * C + z] = 1.0;
      }
    }
  }
  info.private_updates.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::size_t Pi = static_cast<std::size_t>(spec.local_states[i]);
    const std::size_t Ai = static_cast<std::size_t>(spec.actions[i]);
    const std::size_t Oi = m.observations[i].size();
    info.private_updates[i].assign(Pi * Ai * Oi * Pi, 0.0);
    for (std::size_t p = 0; p < Pi; ++p) {
      for (std::size_t a = 0; a < Ai; ++a) {
        for (std::size_t o = 0; o < Oi; ++o) {
          std::size_t local = o % Pi;
          info.private_updates[i][((p * Ai + a) * Oi + o) * Pi + local] = 1.0;
        }
      }
    }
  }
  info.initial_private.assign(n, 0);
  std::vector<int> reveal(C);
  for (std::size_t z = 0; z < C; ++z) reveal[z] = static_cast<int>(z % A);
  info.action_reveal = std::move(reveal);
  return {std::move(m), std::move(info)};
}

// Hidden state observed through one public noisy signal shared by all
// players; the common increment is (signal, previous joint action) and there
// is no private information.
struct PublicSignalSpec {
  int states = 2;
  int signals = 2;
  std::vector<int> actions;        // per player
  std::vector<double> transition;  // [s][a][s']
  std::vector<double> signal;      // [s][y]
  std::vector<double> rewards;     // [i][s][a]
  std::vector<double> prior;       // empty = uniform
  double discount = 0.5;
};

inline std::pair<PomgModel, InfoStructure> make_public_signal_model(
    const PublicSignalSpec& spec, const Budgets& budgets = {}) {
  const int n = static_cast<int>(spec.actions.size());
  if (n < 1 || spec.states < 1 || spec.signals < 1) throw Error("public-signal sizes must be >= 1");
  const std::size_t S = static_cast<std::size_t>(spec.states);
  const std::size_t Y = static_cast<std::size_t>(spec.signals);
  const std::size_t A = checked_product(spec.actions, budgets.sizes, "joint action space");
  PomgModel m;
  InfoStructure info;
  for (int i = 0; i < n; ++i) m.players.push_back("p" + std::to_string(i));
  for (std::size_t s = 0; s < S; ++s) m.states.push_back("s" + std::to_string(s));
  m.actions.resize(n);
  m.observations.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < spec.actions[i]; ++a) m.actions[i].push_back("a" + std::to_string(a));
    for (std::size_t y = 0; y < Y; ++y) m.observations[i].push_back("y" + std::to_string(y));
  }
  const JointIndexer aidx = m.action_indexer();
  const JointIndexer oidx = m.observation_indexer();
  const std::size_t O = oidx.size();
  if (spec.transition.size() != S * A * S) throw Error("transition table has wrong size");
  if (spec.signal.size() != S * Y) throw Error("signal table has wrong size");
  if (spec.rewards.size() != static_cast<std::size_t>(n) * S * A) {
    throw Error("reward table has wrong size");
  }
  m.transition = spec.transition;
  m.rewards = spec.rewards;
  m.prior = spec.prior.empty() ? std::vector<double>(S, 1.0 / static_cast<double>(S)) : spec.prior;
  m.discount = spec.discount;
  m.emission.assign(S * O, 0.0);
  std::vector<int> oc(n);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t y = 0; y < Y; ++y) {
      std::fill(oc.begin(), oc.end(), static_cast<int>(y));
      m.emission[s * O + oidx.flatten(oc)] = spec.signal[s * Y + y];
    }
  }
  for (std::size_t y = 0; y < Y; ++y) {
    for (std::size_t a = 0; a < A; ++a) {
      auto ac = aidx.unflatten(a);
      std::string label = "y" + std::to_string(y) + "|";
      for (int i = 0; i < n; ++i) label += (i ? "," : "") + m.actions[i][ac[i]];
      info.common_alphabet.push_back(label);
    }
  }
  const std::size_t C = info.common_alphabet.size();
  info.private_alphabets.assign(n, std::vector<std::string>{"-"});
  info.common_update.assign(A * O * C, 0.0);
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t o = 0; o < O; ++o) {
      std::size_t y = static_cast<std::size_t>(oidx.component(o, 0));
      info.common_update[(a * O + o) * C + y * A + a] = 1.0;
    }
  }
  info.private_updates.resize(n);
  for (int i = 0; i < n; ++i) {
    info.private_updates[i].assign(static_cast<std::size_t>(spec.actions[i]) * Y, 1.0);
  }
  info.initial_private.assign(n, 0);
  std::vector<int> reveal(C);
  for (std::size_t z = 0; z < C; ++z) reveal[z] = static_cast<int>(z % A);
  info.action_reveal = std::move(reveal);
  return {std::move(m), std::move(info)};
}

// Two global states, uniform global transition regardless of actions, and
// matching pennies whose stakes are (1 + s0) for player 0; player 1 receives
// the negation. Reward bound is 2.
inline std::pair<PomgModel, InfoStructure> make_mini_mp(double discount = 0.5) {
  Example1Spec spec;
  spec.global_states = 2;
  spec.local_states = {1, 1};
  spec.actions = {2, 2};
  spec.discount = discount;
  const std::size_t S = 2, A = 4;
  spec.rewards.assign(2 * S * A, 0.0);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      int a0 = static_cast<int>(a / 2), a1 = static_cast<int>(a % 2);
      double r = (1.0 + static_cast<double>(s)) * (a0 == a1 ? 1.0 : -1.0);
      spec.rewards[s * A + a] = r;
      spec.rewards[(S + s) * A + a] = -r;
    }
  }
  return make_example1_model(spec);
}

// Two hidden states with transition rows (0.9, 0.1) and (0.2, 0.8) for every
// joint action (Dobrushin coefficient 0.3), a public signal that reports the
// state correctly with probability `accuracy`, and a zero-sum guessing game:
// player 0 wins when its action matches the hidden state, at full stake if
// player 1 plays a0 and half stake otherwise.
inline std::pair<PomgModel, InfoStructure> make_dobrushin_model(double discount = 0.5,
                                                                double accuracy = 0.8) {
  PublicSignalSpec spec;
  spec.states = 2;
  spec.signals = 2;
  spec.actions = {2, 2};
  spec.discount = discount;
  const std::size_t S = 2, A = 4;
  spec.transition.resize(S * A * S);
  for (std::size_t a = 0; a < A; ++a) {
    spec.transition[(0 * A + a) * S + 0] = 0.9;
    spec.transition[(0 * A + a) * S + 1] = 0.1;
    spec.transition[(1 * A + a) * S + 0] = 0.2;
    spec.transition[(1 * A + a) * S + 1] = 0.8;
  }
  spec.signal = {accuracy, 1.0 - accuracy, 1.0 - accuracy, accuracy};
  spec.rewards.assign(2 * S * A, 0.0);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      std::size_t a0 = a / 2, a1 = a % 2;
      double r = (a0 == s ? 1.0 : -1.0) * (a1 == 0 ? 1.0 : 0.5);
      spec.rewards[s * A + a] = r;
      spec.rewards[(S + s) * A + a] = -r;
    }
  }
  return make_public_signal_model(spec);
}

}  // namespace pomg

#endif  // POMG_MODEL_HPP_
