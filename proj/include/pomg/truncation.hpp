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

// Window operators, prescription spaces, and the explicit finite truncated
// game over windows of the last `ell` common increments.

#ifndef POMG_TRUNCATION_HPP_
#define POMG_TRUNCATION_HPP_

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pomg/belief.hpp"
#include "pomg/core.hpp"
#include "pomg/dynamics.hpp"
#include "pomg/filter.hpp"
#include "pomg/model.hpp"

namespace pomg {

using Window = std::vector<int>;

// Last `ell` symbols of `history`, or all of it when shorter.
inline Window window_truncate(std::span<const int> history, int ell) {
  const std::size_t keep = std::min(history.size(), static_cast<std::size_t>(std::max(ell, 0)));
  return Window(history.end() - static_cast<std::ptrdiff_t>(keep), history.end());
}

// Lexicographic index of a fixed-length sequence, oldest symbol most
// significant.
inline std::size_t sequence_index(std::span<const int> seq, int alphabet) {
  std::size_t idx = 0;
  for (int x : seq) idx = idx * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(x);
  return idx;
}

// A map from player `player`'s private windows of exactly `length` stages to
// actions; `table[w]` is the action at the window with lexicographic index w.
struct Prescription {
  int player = 0;
  int length = 0;
  std::vector<int> table;

  int action(std::size_t window_index) const { return table[window_index]; }
  bool operator==(const Prescription&) const = default;
};

// All prescriptions for windows of `length` stages, lexicographic in the table
// (first window most significant).
inline std::vector<Prescription> enumerate_prescriptions(int num_private, int num_actions,
                                                         int player, int length,
                                                         std::size_t budget) {
  const std::size_t domain =
      checked_power(static_cast<std::size_t>(num_private), static_cast<std::size_t>(length),
                    budget, "private window set");
  const std::size_t count = checked_power(static_cast<std::size_t>(num_actions), domain, budget,
                                          "prescription set of player " + std::to_string(player));
  std::vector<Prescription> out;
  out.reserve(count);
  std::vector<int> table(domain, 0);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back({player, length, table});
    for (std::size_t d = domain; d-- > 0;) {
      if (++table[d] < num_actions) break;
      table[d] = 0;
    }
  }
  return out;
}

inline std::vector<Prescription> enumerate_prescriptions(const PomgModel& m,
                                                         const InfoStructure& info, int player,
                                                         int length, const Budgets& budgets = {}) {
  return enumerate_prescriptions(info.num_private(player), m.num_actions(player), player, length,
                                 budgets.prescriptions);
}

// Rule that makes every player play uniformly at random; used as the action
// path inside the window filters.
inline StageRule window_filter_rule() { return uniform_rule(); }

// The truncated belief at a window: `ell`-step filter from mu_bar, histories
// cut to the window length.
inline Belief truncated_belief(const Dynamics& dyn, const Belief& mu_bar, std::span<const int> window,
                               int ell, const StageRule& rule = window_filter_rule()) {
  Belief b = filter_compose(dyn, mu_bar, window, rule);
  return truncate_histories(b, ell, dyn.num_players());
}

struct Transition {
  int next;
  double prob;
};

struct WindowNode {
  Window window;
  Belief belief;
  bool fallback = false;             // belief built from the uniform predictor
  std::vector<double> rewards;       // [joint prescription][player]
  std::vector<std::vector<Transition>> transitions;  // [joint prescription]
};

class TruncatedGame {
 public:
  int ell = 0;
  int num_players = 0;
  double discount = 0.0;
  double reward_bound = 0.0;
  Belief base_measure;
  std::vector<int> num_private;                  // |P_i+|
  std::vector<int> num_actions;                  // |A_i|
  int num_common = 0;                            // |C+|
  std::vector<std::vector<std::vector<Prescription>>> prescriptions;  // [length][player]
  std::vector<WindowNode> nodes;                 // sorted by (length, lexicographic)

  int num_states() const { return static_cast<int>(nodes.size()); }
  int initial_state() const { return 0; }
  int length(int x) const { return static_cast<int>(nodes[x].window.size()); }

  const std::vector<Prescription>& gammas(int x, int player) const {
    return prescriptions[static_cast<std::size_t>(length(x))][static_cast<std::size_t>(player)];
  }
  int num_gammas(int x, int player) const { return static_cast<int>(gammas(x, player).size()); }

  JointIndexer joint_indexer(int x) const {
    std::vector<int> r;
    for (int i = 0; i < num_players; ++i) r.push_back(num_gammas(x, i));
    return JointIndexer(std::move(r));
  }
  std::size_t num_joint(int x) const { return nodes[x].transitions.size(); }

  double reward(int x, std::size_t joint, int player) const {
    return nodes[x].rewards[joint * static_cast<std::size_t>(num_players) + player];
  }

  // Index of a window, or -1.
  int find(std::span<const int> w) const {
    auto it = index_.find(Window(w.begin(), w.end()));
    return it == index_.end() ? -1 : it->second;
  }

  void rebuild_index() {
    index_.clear();
    for (int x = 0; x < num_states(); ++x) index_[nodes[x].window] = x;
  }

 private:
  std::map<Window, int> index_;
};

// psi: successor window after appending z.
inline Window successor_window(std::span<const int> window, int z, int ell) {
  Window w(window.begin(), window.end());
  w.push_back(z);
  return window_truncate(w, ell);
}

namespace detail {

struct PointCache {
  int state;
  double weight;
  std::size_t p_last;
  std::vector<std::size_t> own_window;  // per player
};

inline std::vector<PointCache> cache_points(const Dynamics& dyn, const Belief& b, int k) {
  const int n = dyn.num_players();
  std::vector<PointCache> out;
  for (const auto& [pt, w] : b) {
    PointCache c{pt.state, w, dyn.last_private(pt), {}};
    for (int i = 0; i < n; ++i) {
      std::vector<int> own = pt.own(i, n);
      if (static_cast<int>(own.size()) != k) {
        throw NumericalInconsistency("window belief has private history of unexpected length");
      }
      c.own_window.push_back(sequence_index(own, dyn.info().num_private(i)));
    }
    out.push_back(std::move(c));
  }
  return out;
}

inline std::size_t joint_action_of(const Dynamics& dyn, const PointCache& c,
                                   const std::vector<const Prescription*>& gamma) {
  std::size_t a = 0;
  for (int i = 0; i < dyn.num_players(); ++i) {
    a = a * static_cast<std::size_t>(dyn.model().num_actions(i)) +
        static_cast<std::size_t>(gamma[i]->action(c.own_window[i]));
  }
  return a;
}

// sum_{s', o} T(s'|s,a) Z(o|s') zeta(z | p_last, a, o), dense over z.
inline void add_increment_law(const Dynamics& dyn, int s, std::size_t p_last, std::size_t a,
                              double weight, std::vector<double>& out) {
  for (const auto& [s2, t] : dyn.next_states(s, a)) {
    for (const auto& [o, zo] : dyn.observations_of(s2)) {
      for (const auto& [z, q] : dyn.common_increments(p_last, a, static_cast<std::size_t>(o))) {
        out[static_cast<std::size_t>(z)] += weight * t * zo * q;
      }
    }
  }
}

}  // namespace detail

// Law of the next common increment at a window belief under a joint
// prescription (one prescription per player, all of the window's length).
inline std::vector<double> increment_distribution(const Dynamics& dyn, const Belief& belief,
                                                  const std::vector<const Prescription*>& gamma) {
  const int k = gamma.empty() ? 0 : gamma[0]->length;
  std::vector<double> sigma(dyn.num_common(), 0.0);
  for (const auto& c : detail::cache_points(dyn, belief, k)) {
    detail::add_increment_law(dyn, c.state, c.p_last, detail::joint_action_of(dyn, c, gamma),
                              c.weight, sigma);
  }
  return sigma;
}

inline TruncatedGame build_truncated_game(const Dynamics& dyn, int ell, const Belief& mu_bar,
                                          const Budgets& budgets = {}) {
  if (ell < 0) throw Error("ell must be nonnegative");
  const PomgModel& m = dyn.model();
  const InfoStructure& info = dyn.info();
  const int n = dyn.num_players();
  const int S = dyn.num_states();

  TruncatedGame g;
  g.ell = ell;
  g.num_players = n;
  g.discount = m.discount;
  g.reward_bound = m.reward_bound();
  g.base_measure = mu_bar;
  g.num_common = static_cast<int>(dyn.num_common());
  for (int i = 0; i < n; ++i) {
    g.num_private.push_back(info.num_private(i));
    g.num_actions.push_back(m.num_actions(i));
  }
  g.prescriptions.resize(static_cast<std::size_t>(ell) + 1);
  for (int k = 0; k <= ell; ++k) {
    std::size_t joint = 1;
    for (int i = 0; i < n; ++i) {
      g.prescriptions[k].push_back(enumerate_prescriptions(m, info, i, k, budgets));
      const std::size_t c = g.prescriptions[k][i].size();
      if (joint > budgets.prescriptions / c) {
        throw SizeOverflow("joint prescription set exceeds budget of " +
                           std::to_string(budgets.prescriptions));
      }
      joint *= c;
    }
  }

  std::vector<double> uniform(static_cast<std::size_t>(S), 1.0 / S);
  const Belief uniform_predictor = Belief::over_states(uniform);

  // Breadth-first discovery; successors recorded by window.
  std::map<Window, std::size_t> seen;
  std::vector<WindowNode> found;
  std::vector<std::vector<std::vector<std::pair<Window, double>>>> succ;
  std::deque<Window> frontier{Window{}};
  seen[Window{}] = 0;
  found.push_back({});
  succ.emplace_back();

  while (!frontier.empty()) {
    Window w = std::move(frontier.front());
    frontier.pop_front();
    const std::size_t id = seen.at(w);
    const int k = static_cast<int>(w.size());

    WindowNode node;
    node.window = w;
    try {
      node.belief = truncated_belief(dyn, mu_bar, w, ell);
    } catch (const ZeroLikelihood&) {
      node.belief = truncated_belief(dyn, uniform_predictor, w, ell);
      node.fallback = true;
    }
    const auto pts = detail::cache_points(dyn, node.belief, k);

    // Per point and joint action: reward vector and increment law.
    const std::size_t A = dyn.num_joint_actions();
    std::vector<std::vector<double>> law(pts.size() * A);
    auto law_at = [&](std::size_t p, std::size_t a) -> const std::vector<double>& {
      auto& v = law[p * A + a];
      if (v.empty()) {
        v.assign(dyn.num_common(), 0.0);
        detail::add_increment_law(dyn, pts[p].state, pts[p].p_last, a, 1.0, v);
      }
      return v;
    };

    const auto& gam = g.prescriptions[static_cast<std::size_t>(k)];
    std::vector<int> radices;
    for (int i = 0; i < n; ++i) radices.push_back(static_cast<int>(gam[i].size()));
    JointIndexer jidx(radices);
    node.rewards.assign(jidx.size() * static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<std::pair<Window, double>>> node_succ(jidx.size());
    std::vector<int> coords(n);
    std::vector<const Prescription*> gamma(n);
    std::vector<double> sigma(dyn.num_common());
    for (std::size_t j = 0; j < jidx.size(); ++j) {
      jidx.unflatten(j, coords);
      for (int i = 0; i < n; ++i) gamma[i] = &gam[i][coords[i]];
      std::fill(sigma.begin(), sigma.end(), 0.0);
      for (std::size_t p = 0; p < pts.size(); ++p) {
        const std::size_t a = detail::joint_action_of(dyn, pts[p], gamma);
        for (int i = 0; i < n; ++i) {
          node.rewards[j * n + i] += pts[p].weight * dyn.reward(i, pts[p].state, a);
        }
        const auto& l = law_at(p, a);
        for (std::size_t z = 0; z < sigma.size(); ++z) sigma[z] += pts[p].weight * l[z];
      }
      const double total = sum(sigma);
      if (std::abs(total - 1.0) > 1e-8) {
        throw NumericalInconsistency("increment law at window of length " + std::to_string(k) +
                                     " sums to " + detail::fmt_double(total));
      }
      std::map<Window, double> row;
      for (std::size_t z = 0; z < sigma.size(); ++z) {
        if (sigma[z] <= 0.0) continue;
        row[successor_window(w, static_cast<int>(z), ell)] += sigma[z] / total;
      }
      for (auto& [nw, p] : row) {
        if (!seen.contains(nw)) {
          if (seen.size() >= budgets.sizes) {
            throw SizeOverflow("reachable window set exceeds budget of " +
                               std::to_string(budgets.sizes));
          }
          seen[nw] = found.size();
          found.push_back({});
          succ.emplace_back();
          frontier.push_back(nw);
        }
        node_succ[j].emplace_back(nw, p);
      }
    }
    found[id] = std::move(node);
    succ[id] = std::move(node_succ);
  }

  // Canonical order: by length, then lexicographic.
  std::vector<std::size_t> order(found.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Window& x = found[a].window;
    const Window& y = found[b].window;
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  for (std::size_t k : order) g.nodes.push_back(std::move(found[k]));
  g.rebuild_index();
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    auto& rows = succ[order[pos]];
    auto& node = g.nodes[pos];
    node.transitions.resize(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (const auto& [nw, p] : rows[j]) node.transitions[j].push_back({g.find(nw), p});
      std::sort(node.transitions[j].begin(), node.transitions[j].end(),
                [](const Transition& a, const Transition& b) { return a.next < b.next; });
    }
  }
  return g;
}

inline TruncatedGame build_truncated_game(const Dynamics& dyn, int ell,
                                          const Budgets& budgets = {}) {
  return build_truncated_game(dyn, ell, Belief::over_states(dyn.model().prior), budgets);
}

}  // namespace pomg

#endif  // POMG_TRUNCATION_HPP_
