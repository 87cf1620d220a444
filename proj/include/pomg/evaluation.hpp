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

// Lifting truncated strategies to the original game, finite-horizon value
// brackets, brute-force best responses, and approximation certificates.

#ifndef POMG_EVALUATION_HPP_
#define POMG_EVALUATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pomg/belief.hpp"
#include "pomg/core.hpp"
#include "pomg/dynamics.hpp"
#include "pomg/equilibrium.hpp"
#include "pomg/filter.hpp"
#include "pomg/strategy.hpp"
#include "pomg/truncation.hpp"

namespace pomg {

// Plays the truncated profile at the window of the current common history.
// Each player's prescription draw is replaced by the equivalent action
// distribution at its own private window.
class LiftedStrategy final : public Strategy {
 public:
  LiftedStrategy(const TruncatedGame& g, const StrategyProfileTrunc& p)
      : ell_(g.ell), n_(g.num_players), num_private_(g.num_private), num_actions_(g.num_actions) {
    for (int x = 0; x < g.num_states(); ++x) {
      index_[g.nodes[x].window] = x;
      lengths_.push_back(g.length(x));
    }
    mix_ = p.mix;
    dist_.resize(g.num_states());
    for (int x = 0; x < g.num_states(); ++x) {
      dist_[x].resize(n_);
      for (int i = 0; i < n_; ++i) {
        const auto& gam = g.gammas(x, i);
        const std::size_t W = gam.empty() ? 0 : gam[0].table.size();
        auto& d = dist_[x][i];
        d.assign(W * static_cast<std::size_t>(num_actions_[i]), 0.0);
        for (std::size_t k = 0; k < gam.size(); ++k) {
          const double q = p.mix[i][x][k];
          if (q == 0.0) continue;
          for (std::size_t w = 0; w < W; ++w) d[w * num_actions_[i] + gam[k].table[w]] += q;
        }
      }
    }
  }

  int ell() const { return ell_; }

  // Window state used at a common history; UnknownWindow if the truncated
  // game has no such state.
  int state_at(std::span<const int> common) const {
    auto it = index_.find(window_truncate(common, ell_));
    if (it == index_.end()) throw UnknownWindow("window of the query history is not a game state");
    return it->second;
  }

  const std::vector<double>& mixture(int player, std::span<const int> common) const {
    return mix_[player][state_at(common)];
  }

  StageRule rule_at(std::span<const int> common) const override {
    const int x = state_at(common);
    return [this, x](int player, std::span<const int> own, std::span<double> probs) {
      const int k = lengths_[x];
      if (static_cast<int>(own.size()) < k) {
        throw UnknownWindow("private history shorter than the window length");
      }
      const std::size_t w = sequence_index(own.subspan(own.size() - k), num_private_[player]);
      const int A = num_actions_[player];
      const auto& d = dist_[x][player];
      for (int a = 0; a < A; ++a) probs[a] = d[w * A + a];
    };
  }

  int memory() const override { return std::max(ell_, 1); }

 private:
  int ell_;
  int n_;
  std::vector<int> num_private_;
  std::vector<int> num_actions_;
  std::map<Window, int> index_;
  std::vector<int> lengths_;
  std::vector<std::vector<std::vector<double>>> mix_;   // [player][state][gamma]
  std::vector<std::vector<std::vector<double>>> dist_;  // [state][player][window * A_i + a]
};

inline LiftedStrategy lift(const TruncatedGame& g, const StrategyProfileTrunc& p) {
  return LiftedStrategy(g, p);
}

// Finite-horizon sum with a bracket containing the discounted infinite-
// horizon value.
struct ValueBracket {
  double center = 0.0;
  double tail = 0.0;  // discount^T * r_bar / (1 - discount)
  double lo() const { return center - tail; }
  double hi() const { return center + tail; }
};

inline double tail_term(double discount, int horizon, double r_bar) {
  return std::pow(discount, horizon) * r_bar / (1.0 - discount);
}

namespace detail {

inline Belief keep_stages(const Belief& b, int memory, int width) {
  if (memory < 0) return b;
  return truncate_histories(b, std::max(memory, 1), width);
}

// Expected stage reward of every player at an unnormalized belief.
inline void stage_rewards(const Dynamics& dyn, const Belief& b, const StageRule& rule,
                          std::vector<double>& acc, double scale, const Pin& pin = {}) {
  const int n = dyn.num_players();
  std::vector<std::vector<double>> probs(n);
  for (int i = 0; i < n; ++i) probs[i].resize(static_cast<std::size_t>(dyn.model().num_actions(i)));
  for (const auto& [pt, w] : b) {
    for (int i = 0; i < n; ++i) {
      if (i == pin.player) {
        std::fill(probs[i].begin(), probs[i].end(), 0.0);
        probs[i][pin.action] = 1.0;
      } else {
        std::vector<int> own = pt.own(i, n);
        rule(i, own, probs[i]);
      }
    }
    dyn.for_each_joint_action(probs, [&](std::size_t a, double pa) {
      for (int i = 0; i < n; ++i) acc[i] += scale * w * pa * dyn.reward(i, pt.state, a);
    });
  }
}

struct ExactEvaluator {
  const Dynamics& dyn;
  const Strategy& strategy;
  int horizon;
  NodeCounter& counter;
  std::vector<double> acc;

  void run(std::vector<int>& common, const Belief& b, double scale) {
    counter.tick();
    const StageRule rule = strategy.rule_at(common);
    stage_rewards(dyn, b, rule, acc, scale);
    if (static_cast<int>(common.size()) + 1 >= horizon) return;
    const double next_scale = scale * dyn.model().discount;
    for (std::size_t z = 0; z < dyn.num_common(); ++z) {
      Belief nb = bayes_step(dyn, b, rule, static_cast<int>(z));
      if (!(nb.total_mass() > 0.0)) continue;
      nb = keep_stages(nb, strategy.memory(), dyn.num_players());
      common.push_back(static_cast<int>(z));
      run(common, nb, next_scale);
      common.pop_back();
    }
  }
};

}  // namespace detail

// Exact expectation of sum_{t<T} discount^t r_i for every player, by forward
// enumeration of common histories with unnormalized joint weights.
inline std::vector<ValueBracket> evaluate_exact(const Dynamics& dyn, const Strategy& strategy,
                                                int horizon, const Budgets& budgets = {}) {
  if (horizon < 1) throw Error("horizon must be at least 1");
  const int n = dyn.num_players();
  NodeCounter counter(budgets.nodes, "exact evaluation history tree");
  detail::ExactEvaluator ev{dyn, strategy, horizon, counter, std::vector<double>(n, 0.0)};
  std::vector<int> common;
  ev.run(common, Belief::over_states(dyn.model().prior), 1.0);
  const double tail = tail_term(dyn.model().discount, horizon, dyn.model().reward_bound());
  std::vector<ValueBracket> out;
  for (int i = 0; i < n; ++i) out.push_back({ev.acc[i], tail});
  return out;
}

struct MonteCarloEstimate {
  std::vector<double> mean;
  std::vector<double> std_error;
  int episodes = 0;
  double lo(int i) const { return mean[i] - 1.96 * std_error[i]; }
  double hi(int i) const { return mean[i] + 1.96 * std_error[i]; }
};

inline MonteCarloEstimate evaluate_monte_carlo(const Dynamics& dyn, const Strategy& strategy,
                                               int horizon, int episodes, std::uint64_t seed) {
  if (episodes < 1) throw Error("episodes must be at least 1");
  const int n = dyn.num_players();
  const PomgModel& m = dyn.model();
  std::vector<double> mean(n, 0.0), m2(n, 0.0);  // Welford accumulators
  std::vector<std::vector<double>> probs(n);
  for (int i = 0; i < n; ++i) probs[i].resize(static_cast<std::size_t>(m.num_actions(i)));
  auto draw = [](Rng& rng, std::span<const Dynamics::Out> outs) {
    double u = rng.uniform();
    for (const auto& o : outs) {
      if (u < o.prob) return o.index;
      u -= o.prob;
    }
    return outs.back().index;
  };
  for (int e = 0; e < episodes; ++e) {
    Rng rng(derive_seed(seed, SeedTag::kMonteCarlo, static_cast<std::uint64_t>(e)));
    int s = rng.categorical(m.prior);
    std::vector<int> common;
    std::vector<std::vector<int>> own(n);
    std::size_t p_last = dyn.privates().flatten(dyn.info().initial_private);
    std::vector<double> ret(n, 0.0);
    double scale = 1.0;
    for (int t = 0; t < horizon; ++t) {
      const StageRule rule = strategy.rule_at(common);
      std::size_t a = 0;
      for (int i = 0; i < n; ++i) {
        rule(i, own[i], probs[i]);
        a = a * static_cast<std::size_t>(m.num_actions(i)) +
            static_cast<std::size_t>(rng.categorical(probs[i]));
      }
      for (int i = 0; i < n; ++i) ret[i] += scale * dyn.reward(i, s, a);
      scale *= m.discount;
      if (t + 1 == horizon) break;
      const int s2 = draw(rng, dyn.next_states(s, a));
      const int o = draw(rng, dyn.observations_of(s2));
      const int z = draw(rng, dyn.common_increments(p_last, a, static_cast<std::size_t>(o)));
      const int pj = draw(rng, dyn.private_increments(p_last, a, static_cast<std::size_t>(o)));
      common.push_back(z);
      for (int i = 0; i < n; ++i) own[i].push_back(dyn.private_part(static_cast<std::size_t>(pj), i));
      p_last = static_cast<std::size_t>(pj);
      s = s2;
    }
    for (int i = 0; i < n; ++i) {
      const double d = ret[i] - mean[i];
      mean[i] += d / (e + 1);
      m2[i] += d * (ret[i] - mean[i]);
    }
  }
  MonteCarloEstimate est;
  est.episodes = episodes;
  for (int i = 0; i < n; ++i) {
    const double var = episodes > 1 ? m2[i] / (episodes - 1) : 0.0;
    est.mean.push_back(mean[i]);
    est.std_error.push_back(std::sqrt(var / episodes));
  }
  return est;
}

namespace detail {

struct BestResponseSearch {
  const Dynamics& dyn;
  const Strategy& others;
  int player;
  int horizon;
  NodeCounter& counter;

  // Unnormalized optimal value below an information node of `player`.
  double run(std::vector<int>& common, const Belief& b) {
    counter.tick();
    const StageRule rule = others.rule_at(common);
    const int n = dyn.num_players();
    const double discount = dyn.model().discount;
    const bool last = static_cast<int>(common.size()) + 1 >= horizon;
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < dyn.model().num_actions(player); ++a) {
      std::vector<double> acc(n, 0.0);
      const Pin pin{player, a, -1};
      stage_rewards(dyn, b, rule, acc, 1.0, pin);
      double value = acc[player];
      if (!last) {
        for (std::size_t z = 0; z < dyn.num_common(); ++z) {
          for (int q = 0; q < dyn.info().num_private(player); ++q) {
            Belief nb = bayes_step(dyn, b, rule, static_cast<int>(z), Pin{player, a, q});
            if (!(nb.total_mass() > 0.0)) continue;
            nb = keep_stages(nb, others.memory(), n);
            common.push_back(static_cast<int>(z));
            value += discount * run(common, nb);
            common.pop_back();
          }
        }
      }
      best = std::max(best, value);
    }
    return best;
  }
};

}  // namespace detail

// Optimal finite-horizon value of `player` over all of its behavioral
// strategies against `others` (the player's own rule there is ignored), by
// backward induction over its information nodes (common history, own private
// history).
inline ValueBracket best_response_G2(const Dynamics& dyn, const Strategy& others, int player,
                                     int horizon, const Budgets& budgets = {}) {
  if (horizon < 1) throw Error("horizon must be at least 1");
  NodeCounter counter(budgets.nodes, "best-response information tree");
  detail::BestResponseSearch search{dyn, others, player, horizon, counter};
  std::vector<int> common;
  const double v = search.run(common, Belief::over_states(dyn.model().prior));
  return {v, tail_term(dyn.model().discount, horizon, dyn.model().reward_bound())};
}

// Certificates -----------------------------------------------------------------

struct TheoryEpsilon {
  double xi = 0.0;
  double kappa = 0.0;
  double epsilon = 0.0;
};

inline TheoryEpsilon theory_epsilon(double f, const std::vector<double>& f_i, double r_bar,
                                    double discount) {
  const double d2 = (1.0 - discount) * (1.0 - discount);
  TheoryEpsilon e;
  e.xi = 2.0 * f * r_bar / d2;
  for (double fi : f_i) e.kappa = std::max(e.kappa, 4.0 * fi * r_bar / d2);
  e.epsilon = 2.0 * e.xi + e.kappa;
  return e;
}

// Bracket-width term for differences of two bracketed values:
// 2 * discount^T * r_bar / (1 - discount).
inline double gap_tail_bound(double discount, int horizon, double r_bar) {
  return 2.0 * tail_term(discount, horizon, r_bar);
}

inline constexpr const char* kForgettingCaveat =
    "f_hat and f_hat_i are enumeration lower bounds of the forgetting constants; "
    "the bound is verified with the estimates, not proven";

struct GapCertificate {
  int player = 0;
  int ell = 0;
  int horizon = 0;
  double trunc_value = 0.0;
  double lifted_lo = 0.0, lifted_hi = 0.0;
  double br_lo = 0.0, br_hi = 0.0;
  double measured_gap = 0.0;
  double f_hat = 0.0, f_hat_i = 0.0;
  double xi = 0.0, kappa = 0.0, epsilon_theory = 0.0;
  double tail_bound = 0.0;
  double exploitability = 0.0;
  bool holds = false;
  std::string caveat = kForgettingCaveat;
};

inline std::vector<GapCertificate> certify_epsilon_nash(const Dynamics& dyn,
                                                        const TruncatedGame& game,
                                                        const SolveReport& report,
                                                        const ForgettingCurve& curve, int horizon,
                                                        const Budgets& budgets = {}) {
  if (report.max_exploitability() > 1e-6) {
    throw NotCertified("profile exploitability " + detail::fmt_double(report.max_exploitability()) +
                       " exceeds 1e-6");
  }
  const int n = game.num_players;
  const double r_bar = game.reward_bound;
  const double delta = game.discount;
  std::vector<double> fi;
  for (int i = 0; i < n; ++i) fi.push_back(curve.f_i(i, game.ell));
  const TheoryEpsilon te = theory_epsilon(curve.f(game.ell), fi, r_bar, delta);
  const double tail = gap_tail_bound(delta, horizon, r_bar);

  const LiftedStrategy lifted(game, report.profile);
  const auto lifted_values = evaluate_exact(dyn, lifted, horizon, budgets);
  std::vector<GapCertificate> out;
  for (int i = 0; i < n; ++i) {
    GapCertificate c;
    c.player = i;
    c.ell = game.ell;
    c.horizon = horizon;
    c.trunc_value = report.values[i][game.initial_state()];
    c.lifted_lo = lifted_values[i].lo();
    c.lifted_hi = lifted_values[i].hi();
    const ValueBracket br = best_response_G2(dyn, lifted, i, horizon, budgets);
    c.br_lo = br.lo();
    c.br_hi = br.hi();
    c.measured_gap = c.br_hi - c.lifted_lo;
    c.f_hat = curve.f(game.ell);
    c.f_hat_i = fi[i];
    c.xi = te.xi;
    c.kappa = te.kappa;
    c.epsilon_theory = te.epsilon;
    c.tail_bound = tail;
    c.exploitability = report.exploitability[i];
    c.holds = c.measured_gap <= c.epsilon_theory + 2.0 * tail + 1e-9;
    out.push_back(c);
  }
  return out;
}

struct ValueApproxCheck {
  int player = 0;
  double lifted_value = 0.0;  // bracket center at the horizon
  double trunc_value = 0.0;
  double difference = 0.0;
  double bound = 0.0;         // 2 f_hat r_bar / (1 - discount)^2 + 2 * tail bound
  double margin = 0.0;        // bound - difference
  bool ok() const { return margin >= -1e-12; }
};

// Compares the lifted profile's value in the original game with its value in
// the truncated game, for every player.
inline std::vector<ValueApproxCheck> validate_value_approx(const Dynamics& dyn,
                                                           const TruncatedGame& game,
                                                           const StrategyProfileTrunc& profile,
                                                           const ForgettingCurve& curve,
                                                           int horizon,
                                                           const Budgets& budgets = {}) {
  const double r_bar = game.reward_bound;
  const double delta = game.discount;
  const double tail = gap_tail_bound(delta, horizon, r_bar);
  const double bound =
      2.0 * curve.f(game.ell) * r_bar / ((1.0 - delta) * (1.0 - delta)) + 2.0 * tail;
  const auto trunc = policy_values(game, profile);
  const LiftedStrategy lifted(game, profile);
  const auto values = evaluate_exact(dyn, lifted, horizon, budgets);
  std::vector<ValueApproxCheck> out;
  for (int i = 0; i < game.num_players; ++i) {
    ValueApproxCheck c;
    c.player = i;
    c.lifted_value = values[i].center;
    c.trunc_value = trunc[i][game.initial_state()];
    c.difference = std::abs(c.lifted_value - c.trunc_value);
    c.bound = bound;
    c.margin = bound - c.difference;
    out.push_back(c);
  }
  return out;
}

// Loss from restricting `player` to lifted window strategies against fixed
// opponents: unrestricted best response minus the lifted truncated-game best
// response, both as horizon-T brackets.
struct RestrictionLoss {
  ValueBracket best_response;
  ValueBracket restricted;
  double loss() const { return best_response.center - restricted.center; }
  double width() const { return best_response.tail + restricted.tail; }
};

inline RestrictionLoss restriction_loss(const Dynamics& dyn, const TruncatedGame& game,
                                        const StrategyProfileTrunc& opponents, int player,
                                        int horizon, const Budgets& budgets = {}) {
  RestrictionLoss out;
  const LiftedStrategy others(game, opponents);
  out.best_response = best_response_G2(dyn, others, player, horizon, budgets);
  const BestResponse br = best_response_trunc(game, opponents, player);
  StrategyProfileTrunc p = opponents;
  for (int x = 0; x < game.num_states(); ++x) {
    std::fill(p.mix[player][x].begin(), p.mix[player][x].end(), 0.0);
    p.mix[player][x][br.policy[x]] = 1.0;
  }
  const LiftedStrategy restricted(game, p);
  out.restricted = evaluate_exact(dyn, restricted, horizon, budgets)[player];
  return out;
}

}  // namespace pomg

#endif  // POMG_EVALUATION_HPP_
