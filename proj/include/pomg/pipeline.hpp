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

// Build -> solve -> lift -> certify, for one or several window lengths.

#ifndef POMG_PIPELINE_HPP_
#define POMG_PIPELINE_HPP_

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "pomg/equilibrium.hpp"
#include "pomg/evaluation.hpp"
#include "pomg/filter.hpp"
#include "pomg/io.hpp"
#include "pomg/truncation.hpp"

namespace pomg {

// "zero-sum", "fp", or "auto" (zero-sum when the game allows it).
inline SolveReport solve_truncated_game(const TruncatedGame& g, const std::string& method,
                                        int max_iters = 10000, double fp_tolerance = 1e-6) {
  if (method == "zero-sum") return solve_zero_sum(g);
  if (method == "fp") return fictitious_play(g, max_iters, fp_tolerance);
  if (method != "auto") throw Error("unknown solver method '" + method + "'");
  try {
    check_zero_sum(g);
  } catch (const NotZeroSum&) {
    return fictitious_play(g, max_iters, fp_tolerance);
  }
  return solve_zero_sum(g);
}

struct SweepOptions {
  int horizon = 6;
  std::string method = "auto";
  int max_iters = 10000;
  double fp_tolerance = 1e-6;
  std::uint64_t seed = 0;
  int mixtures = 4;
  bool timing = false;  // wall_time_ms stays 0 unless set
};

struct SweepOutcome {
  std::string csv;
  std::string svg;
  std::vector<GapCertificate> certificates;
  std::vector<std::string> errors;
  bool budget_exceeded = false;
  bool all_hold = true;
};

inline SweepOutcome run_sweep(const Dynamics& dyn, const Belief& mu_bar,
                              const std::vector<int>& lengths, const SweepOptions& opt,
                              const Budgets& budgets = {}) {
  SweepOutcome out;
  out.csv = std::string(kSweepHeader) + "\n";
  std::vector<double> xs, gaps, eps, eps_tail;
  for (int ell : lengths) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const TruncatedGame g = build_truncated_game(dyn, ell, mu_bar, budgets);
      const SolveReport r = solve_truncated_game(g, opt.method, opt.max_iters, opt.fp_tolerance);
      const ForgettingCurve curve =
          estimate_forgetting(dyn, ell, {opt.mixtures, opt.seed}, budgets);
      const auto certs = certify_epsilon_nash(dyn, g, r, curve, opt.horizon, budgets);
      const double ms =
          opt.timing
              ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()
              : 0.0;
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& c : certs) {
        out.csv += certificate_csv_row(c, ms) + "\n";
        worst = std::max(worst, c.measured_gap);
        out.all_hold = out.all_hold && c.holds;
        out.certificates.push_back(c);
      }
      xs.push_back(ell);
      gaps.push_back(worst);
      eps.push_back(certs.front().epsilon_theory);
      eps_tail.push_back(certs.front().epsilon_theory + 2.0 * certs.front().tail_bound);
    } catch (const InfeasibleEnumeration& e) {
      out.errors.push_back("ell " + std::to_string(ell) + ": " + e.what());
      out.budget_exceeded = true;
    } catch (const SizeOverflow& e) {
      out.errors.push_back("ell " + std::to_string(ell) + ": " + e.what());
      out.budget_exceeded = true;
    } catch (const NotCertified& e) {
      out.errors.push_back("ell " + std::to_string(ell) + ": " + e.what());
      out.all_hold = false;
    }
  }
  out.svg = line_chart_svg("measured gap and theoretical epsilon", "window length", xs,
                           {{"measured gap", "#1f77b4", gaps},
                            {"epsilon", "#d62728", eps},
                            {"epsilon + 2 tail", "#ff7f0e", eps_tail}});
  return out;
}

}  // namespace pomg

#endif  // POMG_PIPELINE_HPP_
