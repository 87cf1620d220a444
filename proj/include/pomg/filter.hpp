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

// Exact Bayes filters over (state, private-history) points, their
// compositions, and empirical forgetting estimates.

#ifndef POMG_FILTER_HPP_
#define POMG_FILTER_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pomg/belief.hpp"
#include "pomg/core.hpp"
#include "pomg/dynamics.hpp"
#include "pomg/model.hpp"

namespace pomg {

// Holds one player's action and private increment fixed during an update.
struct Pin {
  int player = -1;
  int action = -1;
  int increment = -1;
};

// One unnormalized Bayes step: mass of (s', p ++ p+) jointly with the common
// increment z. With a pin, the pinned player's action is forced and only its
// realized increment is kept.
inline Belief bayes_step(const Dynamics& dyn, const Belief& b, const StageRule& rule, int z,
                         const Pin& pin = {}) {
  const int n = dyn.num_players();
  std::vector<Belief::Entry> out;
  std::vector<std::vector<double>> probs(n);
  for (int i = 0; i < n; ++i) probs[i].resize(static_cast<std::size_t>(dyn.model().num_actions(i)));

  for (const auto& [pt, w] : b) {
    if (w == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      if (i == pin.player) {
        std::fill(probs[i].begin(), probs[i].end(), 0.0);
        probs[i][pin.action] = 1.0;
      } else {
        std::vector<int> own = pt.own(i, n);
        rule(i, own, probs[i]);
      }
    }
    const std::size_t p_last = dyn.last_private(pt);
    dyn.for_each_joint_action(probs, [&](std::size_t a, double pa) {
      for (const auto& [s2, t] : dyn.next_states(pt.state, a)) {
        for (const auto& [o, zo] : dyn.observations_of(s2)) {
          const double zeta = dyn.common_prob(p_last, a, static_cast<std::size_t>(o),
                                              static_cast<std::size_t>(z));
          if (zeta == 0.0) continue;
          const double base = w * pa * t * zo * zeta;
          for (const auto& [pj, q] : dyn.private_increments(p_last, a, static_cast<std::size_t>(o))) {
            if (pin.player >= 0 &&
                dyn.private_part(static_cast<std::size_t>(pj), pin.player) != pin.increment) {
              continue;
            }
            Point next{s2, pt.history};
            for (int i = 0; i < n; ++i) {
              next.history.push_back(dyn.private_part(static_cast<std::size_t>(pj), i));
            }
            out.emplace_back(std::move(next), base * q);
          }
        }
      }
    });
  }
  return Belief::from_entries(std::move(out));
}

inline Belief public_filter_step(const Dynamics& dyn, const Belief& b, const StageRule& rule,
                                 int z) {
  Belief post = bayes_step(dyn, b, rule, z);
  post.normalize();
  return post;
}

// Player `player`'s posterior after its own action, the common increment and
// its own private increment. Other players follow `rule_others`.
inline Belief private_filter_step(const Dynamics& dyn, const Belief& b,
                                  const StageRule& rule_others, int player, int own_action,
                                  int z, int p_plus) {
  Belief post = bayes_step(dyn, b, rule_others, z, Pin{player, own_action, p_plus});
  post.normalize();
  return post;
}

// Applies one public step per window symbol. `rules` holds either one rule
// for every step or one per step.
inline Belief filter_compose(const Dynamics& dyn, Belief b, std::span<const int> window,
                             std::span<const StageRule> rules) {
  for (std::size_t k = 0; k < window.size(); ++k) {
    const StageRule& r = rules.size() == 1 ? rules[0] : rules[k];
    b = bayes_step(dyn, b, r, window[k]);
    b.normalize(static_cast<int>(k));
  }
  return b;
}

inline Belief filter_compose(const Dynamics& dyn, Belief b, std::span<const int> window,
                             const StageRule& rule) {
  return filter_compose(dyn, std::move(b), window, std::span<const StageRule>(&rule, 1));
}

struct PrivateStep {
  int common;
  int increment;
  int action;
};

inline Belief private_filter_compose(const Dynamics& dyn, Belief b, int player,
                                     std::span<const PrivateStep> window,
                                     const StageRule& rule_others) {
  for (std::size_t k = 0; k < window.size(); ++k) {
    const PrivateStep& st = window[k];
    b = bayes_step(dyn, b, rule_others, st.common, Pin{player, st.action, st.increment});
    b.normalize(static_cast<int>(k));
  }
  return b;
}

// inf over (s, s', a) of the overlap of transition rows.
inline double dobrushin_coefficient(const PomgModel& m) {
  const int S = m.num_states();
  const std::size_t A = m.num_joint_actions();
  double best = 1.0;
  for (std::size_t a = 0; a < A; ++a) {
    for (int s = 0; s < S; ++s) {
      for (int s2 = s + 1; s2 < S; ++s2) {
        double overlap = 0.0;
        for (int t = 0; t < S; ++t) overlap += std::min(m.T(s, a, t), m.T(s2, a, t));
        best = std::min(best, overlap);
      }
    }
  }
  return std::clamp(best, 0.0, 1.0);
}

// Forgetting estimates -------------------------------------------------------

// Predictors are all Dirac measures on states plus `random_mixtures` seeded
// random measures, each paired with empty private histories. Every unordered
// pair of predictors is tested.
struct PairSource {
  int random_mixtures = 4;
  std::uint64_t seed = 0;
};

struct ForgettingCurve {
  std::vector<int> lengths;
  std::vector<double> f_hat;               // [ell]
  std::vector<std::vector<double>> f_hat_i;  // [player][ell]
  std::size_t predictor_pairs = 0;
  std::size_t windows_tested = 0;

  int max_len() const { return lengths.empty() ? -1 : lengths.back(); }
  double f(int ell) const {
    if (ell < 0 || ell > max_len()) throw Error("forgetting curve has no entry for ell");
    return f_hat[static_cast<std::size_t>(ell)];
  }
  double f_i(int player, int ell) const {
    if (ell < 0 || ell > max_len()) throw Error("forgetting curve has no entry for ell");
    return f_hat_i[static_cast<std::size_t>(player)][static_cast<std::size_t>(ell)];
  }
  double f_max_player(int ell) const {
    double m = 0.0;
    for (std::size_t i = 0; i < f_hat_i.size(); ++i) m = std::max(m, f_i(static_cast<int>(i), ell));
    return m;
  }
  std::string method() const {
    return "max over " + std::to_string(predictor_pairs) + " predictor pairs and " +
           std::to_string(windows_tested) + " windows (lower bound)";
  }
};

inline std::vector<Belief> forgetting_predictors(int num_states, const PairSource& src) {
  std::vector<Belief> out;
  for (int s = 0; s < num_states; ++s) out.push_back(Belief::point_mass(Point{s, {}}));
  for (int k = 0; k < src.random_mixtures; ++k) {
    Rng rng(derive_seed(src.seed, SeedTag::kPredictors, static_cast<std::uint64_t>(k)));
    std::vector<double> p = rng.simplex(num_states);
    out.push_back(Belief::over_states(p));
  }
  return out;
}

namespace detail {

struct ForgettingSearch {
  const Dynamics& dyn;
  int max_len;
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> prior_tv;  // per pair
  NodeCounter& counter;
  std::size_t windows = 0;
  StageRule rule = uniform_rule();

  using Level = std::vector<std::optional<Belief>>;

  static bool normalize_or_drop(std::optional<Belief>& b) {
    double t = b->total_mass();
    if (!(t > 0.0)) {
      b.reset();
      return false;
    }
    b->normalize();
    return true;
  }

  void public_dfs(int depth, const Level& cur, std::vector<double>& f) {
    counter.tick();
    ++windows;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& [a, b] = pairs[k];
      if (!cur[a] || !cur[b] || prior_tv[k] <= 0.0) continue;
      f[depth] = std::max(f[depth], tv_distance(*cur[a], *cur[b]) / prior_tv[k]);
    }
    if (depth == max_len) return;
    for (std::size_t z = 0; z < dyn.num_common(); ++z) {
      Level next(cur.size());
      int alive = 0;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (!cur[j]) continue;
        next[j] = bayes_step(dyn, *cur[j], rule, static_cast<int>(z));
        if (normalize_or_drop(next[j])) ++alive;
      }
      if (alive >= 2) public_dfs(depth + 1, next, f);
    }
  }

  void private_dfs(int player, int depth, const Level& cur, std::vector<double>& f) {
    counter.tick();
    ++windows;
    for (const auto& [a, b] : pairs) {
      if (!cur[a] || !cur[b]) continue;
      f[depth] = std::max(f[depth], tv_distance(*cur[a], *cur[b]));
    }
    if (depth == max_len) return;
    const InfoStructure& info = dyn.info();
    const int Ai = dyn.model().num_actions(player);
    for (std::size_t z = 0; z < dyn.num_common(); ++z) {
      int a_lo = 0, a_hi = Ai;
      if (info.action_reveal) {
        a_lo = dyn.action_part(static_cast<std::size_t>((*info.action_reveal)[z]), player);
        a_hi = a_lo + 1;
      }
      for (int own = a_lo; own < a_hi; ++own) {
        for (int q = 0; q < info.num_private(player); ++q) {
          Level next(cur.size());
          int alive = 0;
          for (std::size_t j = 0; j < cur.size(); ++j) {
            if (!cur[j]) continue;
            next[j] = bayes_step(dyn, *cur[j], rule, static_cast<int>(z), Pin{player, own, q});
            if (normalize_or_drop(next[j])) ++alive;
          }
          if (alive >= 2) private_dfs(player, depth + 1, next, f);
        }
      }
    }
  }
};

}  // namespace detail

// f_hat(l): max over reachable windows and predictor pairs of the TV ratio of
// the l-step public filter outputs to the TV of the predictors. f_hat_i(l):
// max TV of player i's l-step private filter outputs. Filters run under the
// uniform action rule. Both are lower bounds of the true constants.
inline ForgettingCurve estimate_forgetting(const Dynamics& dyn, int max_len,
                                           const PairSource& src = {},
                                           const Budgets& budgets = {}) {
  if (max_len < 0) throw Error("max_len must be nonnegative");
  const int n = dyn.num_players();
  std::vector<Belief> preds = forgetting_predictors(dyn.num_states(), src);
  ForgettingCurve curve;
  for (int l = 0; l <= max_len; ++l) curve.lengths.push_back(l);
  curve.f_hat.assign(static_cast<std::size_t>(max_len) + 1, 0.0);
  curve.f_hat_i.assign(static_cast<std::size_t>(n),
                       std::vector<double>(static_cast<std::size_t>(max_len) + 1, 0.0));

  NodeCounter counter(budgets.nodes, "forgetting window enumeration");
  detail::ForgettingSearch search{dyn, max_len, {}, {}, counter};
  for (int a = 0; a < static_cast<int>(preds.size()); ++a) {
    for (int b = a + 1; b < static_cast<int>(preds.size()); ++b) {
      search.pairs.emplace_back(a, b);
      search.prior_tv.push_back(tv_distance(preds[a], preds[b]));
    }
  }
  curve.predictor_pairs = search.pairs.size();
  detail::ForgettingSearch::Level root(preds.begin(), preds.end());
  search.public_dfs(0, root, curve.f_hat);
  for (int i = 0; i < n; ++i) search.private_dfs(i, 0, root, curve.f_hat_i[i]);
  curve.windows_tested = search.windows;

  for (double& x : curve.f_hat) x = std::clamp(x, 0.0, 1.0);
  for (auto& row : curve.f_hat_i) {
    for (double& x : row) x = std::clamp(x, 0.0, 1.0);
  }
  return curve;
}

}  // namespace pomg

#endif  // POMG_FILTER_HPP_
