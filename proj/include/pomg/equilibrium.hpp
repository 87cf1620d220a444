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

// Solvers for the truncated game: best responses, Shapley iteration for
// two-player zero-sum games, fictitious play, exploitability.

#ifndef POMG_EQUILIBRIUM_HPP_
#define POMG_EQUILIBRIUM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "pomg/core.hpp"
#include "pomg/matrix_game.hpp"
#include "pomg/truncation.hpp"

namespace pomg {

// Per player, per window state, a distribution over that state's
// prescriptions.
struct StrategyProfileTrunc {
  std::vector<std::vector<std::vector<double>>> mix;  // [player][state][gamma]

  const std::vector<double>& at(int player, int x) const { return mix[player][x]; }
  int num_players() const { return static_cast<int>(mix.size()); }
};

inline StrategyProfileTrunc uniform_profile(const TruncatedGame& g) {
  StrategyProfileTrunc p;
  p.mix.resize(g.num_players);
  for (int i = 0; i < g.num_players; ++i) {
    for (int x = 0; x < g.num_states(); ++x) {
      const int k = g.num_gammas(x, i);
      p.mix[i].emplace_back(k, 1.0 / k);
    }
  }
  return p;
}

// Seeded random mixtures (flat Dirichlet per state and player).
inline StrategyProfileTrunc random_profile(const TruncatedGame& g, std::uint64_t seed) {
  StrategyProfileTrunc p;
  p.mix.resize(g.num_players);
  Rng rng(seed);
  for (int i = 0; i < g.num_players; ++i) {
    for (int x = 0; x < g.num_states(); ++x) p.mix[i].push_back(rng.simplex(g.num_gammas(x, i)));
  }
  return p;
}

inline ValidationReport validate_profile(const TruncatedGame& g, const StrategyProfileTrunc& p) {
  ValidationReport rep;
  if (p.num_players() != g.num_players) {
    rep.violations.push_back({"profile shape", "player count does not match the game"});
    return rep;
  }
  for (int i = 0; i < g.num_players; ++i) {
    if (static_cast<int>(p.mix[i].size()) != g.num_states()) {
      rep.violations.push_back({"profile shape", "state count does not match for player " +
                                                     std::to_string(i)});
      continue;
    }
    for (int x = 0; x < g.num_states(); ++x) {
      const auto& v = p.mix[i][x];
      const std::string where = "player " + std::to_string(i) + " state " + std::to_string(x);
      if (static_cast<int>(v.size()) != g.num_gammas(x, i)) {
        rep.violations.push_back({"profile shape", where + " has wrong support size"});
        continue;
      }
      bool neg = std::any_of(v.begin(), v.end(), [](double q) { return !(q >= 0.0); });
      if (neg || std::abs(sum(v) - 1.0) > kBeliefTol) {
        rep.violations.push_back({"profile distribution", where + " is not a distribution"});
      }
    }
  }
  return rep;
}

// MDP faced by one player when the others follow fixed mixtures.
struct InducedMdp {
  std::vector<std::vector<double>> reward;                   // [state][gamma]
  std::vector<std::vector<std::vector<Transition>>> trans;  // [state][gamma]
};

inline InducedMdp induced_mdp(const TruncatedGame& g, const StrategyProfileTrunc& p, int player) {
  InducedMdp mdp;
  const int n = g.num_players;
  std::vector<int> coords(n);
  for (int x = 0; x < g.num_states(); ++x) {
    const int k = g.num_gammas(x, player);
    const JointIndexer jidx = g.joint_indexer(x);
    std::vector<double> r(k, 0.0);
    std::vector<std::map<int, double>> rows(k);
    for (std::size_t j = 0; j < jidx.size(); ++j) {
      jidx.unflatten(j, coords);
      double w = 1.0;
      for (int o = 0; o < n && w > 0.0; ++o) {
        if (o != player) w *= p.mix[o][x][coords[o]];
      }
      if (w == 0.0) continue;
      const int gi = coords[player];
      r[gi] += w * g.reward(x, j, player);
      for (const auto& t : g.nodes[x].transitions[j]) rows[gi][t.next] += w * t.prob;
    }
    mdp.reward.push_back(std::move(r));
    std::vector<std::vector<Transition>> tr(k);
    for (int gi = 0; gi < k; ++gi) {
      for (auto [y, q] : rows[gi]) tr[gi].push_back({y, q});
    }
    mdp.trans.push_back(std::move(tr));
  }
  return mdp;
}

// Fixed point of v = r + discount * P v by iteration to an absolute change of
// 1e-13.
inline std::vector<double> evaluate_chain(const std::vector<double>& r,
                                          const std::vector<std::vector<Transition>>& P,
                                          double discount) {
  std::vector<double> v(r.size(), 0.0), nv(r.size());
  for (int it = 0; it < 1'000'000; ++it) {
    double diff = 0.0;
    for (std::size_t x = 0; x < r.size(); ++x) {
      double acc = 0.0;
      for (const auto& t : P[x]) acc += t.prob * v[static_cast<std::size_t>(t.next)];
      nv[x] = r[x] + discount * acc;
      diff = std::max(diff, std::abs(nv[x] - v[x]));
    }
    v.swap(nv);
    if (diff <= 1e-13) break;
  }
  return v;
}

struct BestResponse {
  std::vector<int> policy;     // prescription index per state
  std::vector<double> values;  // value of that policy per state
  int iterations = 0;
};

inline BestResponse solve_mdp(const InducedMdp& mdp, double discount) {
  const std::size_t X = mdp.reward.size();
  const double tol = discount > 0.0 ? (1.0 - discount) * 1e-9 / (2.0 * discount) : 0.0;
  std::vector<double> v(X, 0.0), nv(X);
  BestResponse br;
  auto q_value = [&](std::size_t x, std::size_t gi, const std::vector<double>& val) {
    double acc = 0.0;
    for (const auto& t : mdp.trans[x][gi]) acc += t.prob * val[static_cast<std::size_t>(t.next)];
    return mdp.reward[x][gi] + discount * acc;
  };
  for (int it = 1; it <= 1'000'000; ++it) {
    double diff = 0.0;
    for (std::size_t x = 0; x < X; ++x) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t gi = 0; gi < mdp.reward[x].size(); ++gi) best = std::max(best, q_value(x, gi, v));
      nv[x] = best;
      diff = std::max(diff, std::abs(nv[x] - v[x]));
    }
    v.swap(nv);
    br.iterations = it;
    if (diff <= tol) break;
  }
  br.policy.assign(X, 0);
  std::vector<double> r(X);
  std::vector<std::vector<Transition>> P(X);
  for (std::size_t x = 0; x < X; ++x) {
    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> q(mdp.reward[x].size());
    for (std::size_t gi = 0; gi < q.size(); ++gi) {
      q[gi] = q_value(x, gi, v);
      best = std::max(best, q[gi]);
    }
    const double slack = 1e-12 * std::max(1.0, std::abs(best));
    for (std::size_t gi = 0; gi < q.size(); ++gi) {
      if (q[gi] >= best - slack) {
        br.policy[x] = static_cast<int>(gi);
        break;
      }
    }
    r[x] = mdp.reward[x][br.policy[x]];
    P[x] = mdp.trans[x][br.policy[x]];
  }
  br.values = evaluate_chain(r, P, discount);
  return br;
}

inline BestResponse best_response_trunc(const TruncatedGame& g, const StrategyProfileTrunc& p,
                                        int player) {
  return solve_mdp(induced_mdp(g, p, player), g.discount);
}

// Values of every player at every state under a profile.
inline std::vector<std::vector<double>> policy_values(const TruncatedGame& g,
                                                      const StrategyProfileTrunc& p) {
  const int n = g.num_players;
  const int X = g.num_states();
  std::vector<std::vector<double>> r(n, std::vector<double>(X, 0.0));
  std::vector<std::vector<Transition>> P(X);
  std::vector<int> coords(n);
  for (int x = 0; x < X; ++x) {
    const JointIndexer jidx = g.joint_indexer(x);
    std::map<int, double> row;
    for (std::size_t j = 0; j < jidx.size(); ++j) {
      jidx.unflatten(j, coords);
      double w = 1.0;
      for (int i = 0; i < n && w > 0.0; ++i) w *= p.mix[i][x][coords[i]];
      if (w == 0.0) continue;
      for (int i = 0; i < n; ++i) r[i][x] += w * g.reward(x, j, i);
      for (const auto& t : g.nodes[x].transitions[j]) row[t.next] += w * t.prob;
    }
    for (auto [y, q] : row) P[x].push_back({y, q});
  }
  std::vector<std::vector<double>> out;
  for (int i = 0; i < n; ++i) out.push_back(evaluate_chain(r[i], P, g.discount));
  return out;
}

// Best-response gain of each player at the initial (empty) window.
inline std::vector<double> exploitability(const TruncatedGame& g, const StrategyProfileTrunc& p) {
  const auto values = policy_values(g, p);
  std::vector<double> gaps;
  for (int i = 0; i < g.num_players; ++i) {
    const auto br = best_response_trunc(g, p, i);
    gaps.push_back(br.values[g.initial_state()] - values[i][g.initial_state()]);
  }
  return gaps;
}

struct SolveReport {
  std::string method;
  StrategyProfileTrunc profile;
  std::vector<std::vector<double>> values;  // [player][state]
  std::vector<double> exploitability;       // [player]
  int iterations = 0;
  double residual = 0.0;
  std::vector<double> residuals;
  bool converged = false;

  double max_exploitability() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double e : exploitability) m = std::max(m, e);
    return m;
  }
};

inline void check_zero_sum(const TruncatedGame& g) {
  if (g.num_players != 2) throw NotZeroSum("zero-sum solver needs exactly 2 players");
  for (int x = 0; x < g.num_states(); ++x) {
    for (std::size_t j = 0; j < g.num_joint(x); ++j) {
      const double s = g.reward(x, j, 0) + g.reward(x, j, 1);
      if (std::abs(s) > 1e-12 * std::max(1.0, g.reward_bound)) {
        throw NotZeroSum("rewards do not sum to zero at window state " + std::to_string(x));
      }
    }
  }
}

// Shapley iteration: per sweep and state, solve the matrix game
// r_0 + discount * E[v(next)] for player 0.
inline SolveReport solve_zero_sum(const TruncatedGame& g, double tolerance = 1e-9,
                                  int max_sweeps = 1'000'000) {
  check_zero_sum(g);
  const int X = g.num_states();
  SolveReport rep;
  rep.method = "zero-sum";
  rep.profile.mix.assign(2, std::vector<std::vector<double>>(X));
  std::vector<double> v(X, 0.0), nv(X);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    double diff = 0.0;
    for (int x = 0; x < X; ++x) {
      const int k0 = g.num_gammas(x, 0), k1 = g.num_gammas(x, 1);
      Matrix M(k0, k1);
      for (int a = 0; a < k0; ++a) {
        for (int b = 0; b < k1; ++b) {
          const std::size_t j = static_cast<std::size_t>(a) * k1 + b;
          double cont = 0.0;
          for (const auto& t : g.nodes[x].transitions[j]) cont += t.prob * v[t.next];
          M(a, b) = g.reward(x, j, 0) + g.discount * cont;
        }
      }
      MatrixGameSolution sol = solve_matrix_game(M);
      nv[x] = sol.value;
      rep.profile.mix[0][x] = std::move(sol.row);
      rep.profile.mix[1][x] = std::move(sol.col);
      diff = std::max(diff, std::abs(nv[x] - v[x]));
    }
    v.swap(nv);
    rep.iterations = sweep;
    rep.residual = diff;
    rep.residuals.push_back(diff);
    if (diff <= tolerance) break;
  }
  rep.values = policy_values(g, rep.profile);
  rep.exploitability = exploitability(g, rep.profile);
  rep.converged = rep.residual <= tolerance && rep.max_exploitability() <= 1e-6;
  return rep;
}

// Fictitious play with alternating updates: the running average starts at
// the best responses to the uniform profile; at iteration k each player in
// turn mixes in, with weight 1/(k+1), its best response to the current
// average (which already includes the earlier players' updates).
inline SolveReport fictitious_play(const TruncatedGame& g, int max_iters, double tolerance) {
  const int n = g.num_players;
  const int X = g.num_states();
  SolveReport rep;
  rep.method = "fp";
  auto set_pure = [&](StrategyProfileTrunc& p, int i, const BestResponse& br, double w) {
    for (int x = 0; x < X; ++x) {
      auto& v = p.mix[i][x];
      for (double& q : v) q *= 1.0 - w;
      v[br.policy[x]] += w;
    }
  };

  StrategyProfileTrunc avg = uniform_profile(g);
  for (int i = 0; i < n; ++i) set_pure(avg, i, best_response_trunc(g, avg, i), 1.0);
  for (int k = 1;; ++k) {
    const auto values = policy_values(g, avg);
    std::vector<double> gaps;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const auto br = best_response_trunc(g, avg, i);
      gaps.push_back(br.values[g.initial_state()] - values[i][g.initial_state()]);
      worst = std::max(worst, gaps.back());
    }
    rep.iterations = k;
    rep.residual = worst;
    rep.residuals.push_back(worst);
    if (worst <= tolerance || k >= max_iters) {
      rep.profile = avg;
      rep.values = values;
      rep.exploitability = gaps;
      rep.converged = worst <= tolerance;
      break;
    }
    const double w = 1.0 / static_cast<double>(k + 1);
    for (int i = 0; i < n; ++i) set_pure(avg, i, best_response_trunc(g, avg, i), w);
  }
  return rep;
}

}  // namespace pomg

#endif  // POMG_EQUILIBRIUM_HPP_
