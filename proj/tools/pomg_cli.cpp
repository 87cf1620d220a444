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

// Command-line driver: validate, build, solve, evaluate, certify, sweep,
// diagnose, generate.
//
// Exit codes: 0 success, 1 validation or certification failure, 2 budget
// overrun, 3 parse or input error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pomg/pomg.hpp"

namespace {

using namespace pomg;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;
constexpr int kExitParse = 3;

struct Exit {
  int code;
};

struct Loaded {
  PomgModel model;
  InfoStructure info;
};

struct GateOptions {
  bool assume_independent = false;
  int horizon = 3;
  int trials = 4;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
};

void add_gate_options(CLI::App* cmd, GateOptions& g) {
  cmd->add_flag("--assume-independent", g.assume_independent,
                "Proceed even if the strategy-independence check fails");
  cmd->add_option("--independence-horizon", g.horizon, "History depth of the independence check")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--independence-trials", g.trials, "Strategy pairs in the independence check")
      ->check(CLI::PositiveNumber);
}

// Parses and validates a model; prints the report and the independence
// check. Throws Exit on failure.
Loaded load_checked(const std::string& path, const GateOptions& gate, const Budgets& budgets,
                    bool verbose) {
  auto [m, info] = load_model(path);
  const ValidationReport rep = validate_model(m, info);
  if (!rep.ok()) {
    std::cerr << "invalid model " << path << ":\n" << rep.to_string();
    throw Exit{kExitInvalid};
  }
  const Dynamics dyn(m, info);
  const IndependenceReport ind =
      check_strategy_independence(dyn, gate.horizon, gate.trials, gate.tolerance, gate.seed, budgets);
  if (verbose) {
    std::cout << "model: " << m.num_players() << " players, " << m.num_states() << " states, "
              << info.num_common() << " common increments\n"
              << "strategy independence: max discrepancy " << format_number(ind.max_discrepancy)
              << " over " << ind.histories_compared << " histories (horizon " << ind.horizon
              << ") " << (ind.pass ? "PASS" : "FAIL") << "\n";
  }
  if (!ind.pass) {
    if (!gate.assume_independent) {
      std::cerr << "strategy independence check failed (max discrepancy "
                << format_number(ind.max_discrepancy)
                << "); rerun with --assume-independent to proceed anyway\n";
      throw Exit{kExitInvalid};
    }
    std::cerr << "warning: strategy independence check failed; proceeding as requested\n";
  }
  return {std::move(m), std::move(info)};
}

Belief mu_bar_for(const PomgModel& m, const std::string& path) {
  if (path.empty()) return Belief::over_states(m.prior);
  return parse_mu_bar(read_file(path), m.num_states());
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ParseError("empty list");
  return out;
}

void print_solve_summary(const SolveReport& r) {
  std::cout << "method " << r.method << ", iterations " << r.iterations << ", residual "
            << format_number(r.residual) << ", converged " << (r.converged ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < r.exploitability.size(); ++i) {
    std::cout << "player " << i << ": value " << format_number(r.values[i][0])
              << ", exploitability " << format_number(r.exploitability[i]) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-window truncation of partially observable Markov games"};
  app.require_subcommand(1);
  Budgets budgets = Budgets::from_env();

  GateOptions gate;
  std::string model_path, game_path, report_path, out_path, mu_bar_path, out_dir;
  std::string method = "auto";
  std::string ells = "0,1,2";
  int ell = 1, horizon = 6, episodes = 0, max_len = 3, max_iters = 10000, mixtures = 4;
  double fp_tol = 1e-6;
  std::uint64_t seed = 0;
  bool timing = false;

  auto* validate = app.add_subcommand("validate", "Check a model file and its assumptions");
  validate->add_option("model", model_path)->required();
  add_gate_options(validate, gate);

  auto* build = app.add_subcommand("build", "Build the truncated game and write it as JSON");
  build->add_option("model", model_path)->required();
  build->add_option("--ell", ell, "Window length")->check(CLI::NonNegativeNumber);
  build->add_option("--mu-bar", mu_bar_path, "JSON distribution over states used as predictor");
  build->add_option("--out", out_path, "Output file (stdout if omitted)");
  add_gate_options(build, gate);

  auto* solve_cmd = app.add_subcommand("solve", "Solve a truncated game artifact");
  solve_cmd->add_option("game", game_path)->required();
  solve_cmd->add_option("--method", method, "zero-sum, fp or auto")
      ->check(CLI::IsMember({"auto", "zero-sum", "fp"}));
  solve_cmd->add_option("--max-iters", max_iters, "Fictitious-play iteration cap");
  solve_cmd->add_option("--tol", fp_tol, "Fictitious-play exploitability target");
  solve_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a lifted solve report in the model");
  evaluate->add_option("model", model_path)->required();
  evaluate->add_option("report", report_path)->required();
  evaluate->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
  evaluate->add_option("--episodes", episodes, "Monte-Carlo episodes (0 = exact only)");
  evaluate->add_option("--seed", seed);
  add_gate_options(evaluate, gate);

  auto* certify = app.add_subcommand("certify", "Build, solve, lift and certify one window length");
  certify->add_option("model", model_path)->required();
  certify->add_option("--ell", ell)->check(CLI::NonNegativeNumber);
  certify->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
  certify->add_option("--mu-bar", mu_bar_path);
  certify->add_option("--method", method)->check(CLI::IsMember({"auto", "zero-sum", "fp"}));
  certify->add_option("--seed", seed);
  certify->add_option("--mixtures", mixtures, "Random predictors in the forgetting estimate");
  certify->add_option("--out", out_path, "Certificate JSON output");
  add_gate_options(certify, gate);

  auto* sweep = app.add_subcommand("sweep", "Certify a list of window lengths; write CSV and SVG");
  sweep->add_option("model", model_path)->required();
  sweep->add_option("--ells", ells, "Comma-separated window lengths");
  sweep->add_option("--horizon", horizon)->check(CLI::PositiveNumber);
  sweep->add_option("--mu-bar", mu_bar_path);
  sweep->add_option("--method", method)->check(CLI::IsMember({"auto", "zero-sum", "fp"}));
  sweep->add_option("--seed", seed);
  sweep->add_option("--mixtures", mixtures);
  sweep->add_option("--out-dir", out_dir, "Directory for sweep.csv and sweep.svg")->required();
  sweep->add_flag("--timing", timing, "Fill the wall_time_ms column (otherwise 0)");
  add_gate_options(sweep, gate);

  auto* diagnose = app.add_subcommand("diagnose", "Dobrushin coefficient and forgetting curve");
  diagnose->add_option("model", model_path)->required();
  diagnose->add_option("--max-len", max_len)->check(CLI::NonNegativeNumber);
  diagnose->add_option("--seed", seed);
  diagnose->add_option("--mixtures", mixtures);

  std::string family;
  double discount = 0.5;
  auto* generate = app.add_subcommand("generate", "Write a built-in model as JSON");
  generate->add_option("family", family, "minimp or dobrushin")
      ->required()
      ->check(CLI::IsMember({"minimp", "dobrushin"}));
  generate->add_option("--discount", discount);
  generate->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);
  gate.seed = seed;

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_file(out_path, text);
    }
  };

  try {
    if (*validate) {
      load_checked(model_path, gate, budgets, true);
      std::cout << "PASS\n";
      return kExitOk;
    }
    if (*generate) {
      auto [m, info] = family == "minimp" ? make_mini_mp(discount) : make_dobrushin_model(discount);
      emit(serialize_model(m, info));
      return kExitOk;
    }
    if (*build) {
      Loaded l = load_checked(model_path, gate, budgets, false);
      const Dynamics dyn(l.model, l.info);
      const TruncatedGame g = build_truncated_game(dyn, ell, mu_bar_for(l.model, mu_bar_path), budgets);
      emit(game_to_json(g).dump(1) + "\n");
      std::cerr << "built truncated game: ell " << ell << ", " << g.num_states()
                << " window states\n";
      return kExitOk;
    }
    if (*solve_cmd) {
      const TruncatedGame g = game_from_json(parse_json_text(read_file(game_path)));
      const SolveReport r = solve_truncated_game(g, method, max_iters, fp_tol);
      emit(report_to_json(r, g).dump(1) + "\n");
      print_solve_summary(r);
      return r.converged ? kExitOk : kExitInvalid;
    }
    if (*evaluate) {
      Loaded l = load_checked(model_path, gate, budgets, false);
      const Dynamics dyn(l.model, l.info);
      auto [r, g] = report_from_json(parse_json_text(read_file(report_path)));
      const LiftedStrategy lifted(g, r.profile);
      const auto exact = evaluate_exact(dyn, lifted, horizon, budgets);
      std::cout << "player,trunc_value,lifted_value_lo,lifted_value_hi";
      if (episodes > 0) std::cout << ",mc_mean,mc_lo,mc_hi";
      std::cout << "\n";
      std::optional<MonteCarloEstimate> mc;
      if (episodes > 0) mc = evaluate_monte_carlo(dyn, lifted, horizon, episodes, seed);
      for (int i = 0; i < g.num_players; ++i) {
        std::cout << i << "," << format_number(r.values[i][g.initial_state()]) << ","
                  << format_number(exact[i].lo()) << "," << format_number(exact[i].hi());
        if (mc) {
          std::cout << "," << format_number(mc->mean[i]) << "," << format_number(mc->lo(i)) << ","
                    << format_number(mc->hi(i));
        }
        std::cout << "\n";
      }
      return kExitOk;
    }
    if (*diagnose) {
      auto [m, info] = load_model(model_path);
      if (auto rep = validate_model(m, info); !rep.ok()) {
        std::cerr << rep.to_string();
        return kExitInvalid;
      }
      const Dynamics dyn(m, info);
      std::cout << "dobrushin_coefficient," << format_number(dobrushin_coefficient(m)) << "\n";
      const ForgettingCurve c = estimate_forgetting(dyn, max_len, {mixtures, seed}, budgets);
      std::cout << forgetting_csv(c);
      std::cerr << c.method() << "\n";
      return kExitOk;
    }
    if (*certify) {
      Loaded l = load_checked(model_path, gate, budgets, false);
      const Dynamics dyn(l.model, l.info);
      const TruncatedGame g = build_truncated_game(dyn, ell, mu_bar_for(l.model, mu_bar_path), budgets);
      const SolveReport r = solve_truncated_game(g, method, max_iters, fp_tol);
      const ForgettingCurve curve = estimate_forgetting(dyn, ell, {mixtures, seed}, budgets);
      const auto certs = certify_epsilon_nash(dyn, g, r, curve, horizon, budgets);
      Json arr = Json::array();
      bool ok = true;
      for (const auto& c : certs) {
        arr.push_back(certificate_to_json(c));
        ok = ok && c.holds;
      }
      emit(arr.dump(2) + "\n");
      return ok ? kExitOk : kExitInvalid;
    }
    if (*sweep) {
      Loaded l = load_checked(model_path, gate, budgets, false);
      const Dynamics dyn(l.model, l.info);
      SweepOptions opt;
      opt.horizon = horizon;
      opt.method = method;
      opt.max_iters = max_iters;
      opt.fp_tolerance = fp_tol;
      opt.seed = seed;
      opt.mixtures = mixtures;
      opt.timing = timing;
      const SweepOutcome res =
          run_sweep(dyn, mu_bar_for(l.model, mu_bar_path), parse_int_list(ells), opt, budgets);
      std::filesystem::create_directories(out_dir);
      const auto dir = std::filesystem::path(out_dir);
      write_file((dir / "sweep.csv").string(), res.csv);
      write_file((dir / "sweep.svg").string(), res.svg);
      for (const auto& e : res.errors) std::cerr << e << "\n";
      std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
      if (res.budget_exceeded) return kExitBudget;
      return res.all_hold ? kExitOk : kExitInvalid;
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InfeasibleEnumeration& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const SizeOverflow& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const NotCertified& e) {
    std::cerr << "not certified: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NotZeroSum& e) {
    std::cerr << "not zero-sum: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
