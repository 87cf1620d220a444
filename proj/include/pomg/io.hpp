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

// JSON model and artifact formats, CSV rows, and SVG charts.

#ifndef POMG_IO_HPP_
#define POMG_IO_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pomg/core.hpp"
#include "pomg/equilibrium.hpp"
#include "pomg/evaluation.hpp"
#include "pomg/filter.hpp"
#include "pomg/model.hpp"
#include "pomg/truncation.hpp"

namespace pomg {

using Json = nlohmann::json;

// Text helpers ---------------------------------------------------------------

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// 12 significant digits; negative zero printed as 0.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError("malformed JSON: " + what, line, col);
  }
}

namespace detail {

inline const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError("missing section '" + key + "'" + (where.empty() ? "" : " in " + where));
  }
  return obj.at(key);
}

inline std::vector<std::string> read_labels(const Json& j, const std::string& name) {
  if (!j.is_array()) throw ParseError("'" + name + "' must be an array of labels");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError("'" + name + "' must contain only strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

// Flattens a nested numeric array of the given shape, row-major.
inline void flatten_into(const Json& j, std::span<const std::size_t> shape, const std::string& path,
                         std::vector<double>& out) {
  if (!j.is_array()) throw ParseError("'" + path + "' must be an array");
  if (j.size() != shape[0]) {
    throw ParseError("'" + path + "' has " + std::to_string(j.size()) + " entries, expected " +
                     std::to_string(shape[0]));
  }
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    if (shape.size() == 1) {
      if (!j[k].is_number()) throw ParseError("'" + p + "' must be a number");
      out.push_back(j[k].get<double>());
    } else {
      flatten_into(j[k], shape.subspan(1), p, out);
    }
  }
}

inline std::vector<double> flatten(const Json& j, std::vector<std::size_t> shape,
                                   const std::string& path) {
  std::vector<double> out;
  flatten_into(j, shape, path, out);
  return out;
}

inline Json nest(const std::vector<double>& data, std::span<const std::size_t> shape,
                 std::size_t offset = 0) {
  Json arr = Json::array();
  if (shape.size() == 1) {
    for (std::size_t k = 0; k < shape[0]; ++k) arr.push_back(data[offset + k]);
    return arr;
  }
  std::size_t stride = 1;
  for (std::size_t k = 1; k < shape.size(); ++k) stride *= shape[k];
  for (std::size_t k = 0; k < shape[0]; ++k) arr.push_back(nest(data, shape.subspan(1), offset + k * stride));
  return arr;
}

inline Json nest(const std::vector<double>& data, std::vector<std::size_t> shape) {
  return nest(data, std::span<const std::size_t>(shape), 0);
}

}  // namespace detail

// Model files ----------------------------------------------------------------

inline std::pair<PomgModel, InfoStructure> model_from_json(const Json& j) {
  using detail::flatten;
  using detail::read_labels;
  using detail::require;
  if (!j.is_object()) throw ParseError("model document must be a JSON object");
  PomgModel m;
  InfoStructure info;
  m.players = read_labels(require(j, "players", ""), "players");
  m.states = read_labels(require(j, "states", ""), "states");
  const std::size_t n = m.players.size();
  if (n == 0) throw ParseError("'players' must not be empty");
  if (m.states.empty()) throw ParseError("'states' must not be empty");
  const Json& acts = require(j, "actions", "");
  const Json& obs = require(j, "observations", "");
  if (!acts.is_array() || acts.size() != n) throw ParseError("'actions' needs one list per player");
  if (!obs.is_array() || obs.size() != n) throw ParseError("'observations' needs one list per player");
  for (std::size_t i = 0; i < n; ++i) {
    m.actions.push_back(read_labels(acts[i], "actions[" + std::to_string(i) + "]"));
    m.observations.push_back(read_labels(obs[i], "observations[" + std::to_string(i) + "]"));
    if (m.actions.back().empty() || m.observations.back().empty()) {
      throw ParseError("player " + std::to_string(i) + " needs at least one action and observation");
    }
  }
  const std::size_t S = m.states.size();
  const std::size_t A = m.num_joint_actions();
  const std::size_t O = m.num_joint_observations();
  m.transition = flatten(require(j, "transition", ""), {S, A, S}, "transition");
  m.emission = flatten(require(j, "emission", ""), {S, O}, "emission");
  m.rewards = flatten(require(j, "rewards", ""), {n, S, A}, "rewards");
  m.prior = flatten(require(j, "prior", ""), {S}, "prior");
  const Json& disc = require(j, "discount", "");
  if (!disc.is_number()) throw ParseError("'discount' must be a number");
  m.discount = disc.get<double>();

  const Json& in = require(j, "info", "");
  info.common_alphabet = read_labels(require(in, "common_alphabet", "info"), "common_alphabet");
  const Json& pa = require(in, "private_alphabets", "info");
  if (!pa.is_array() || pa.size() != n) {
    throw ParseError("'private_alphabets' needs one list per player");
  }
  for (std::size_t i = 0; i < n; ++i) {
    info.private_alphabets.push_back(read_labels(pa[i], "private_alphabets[" + std::to_string(i) + "]"));
    if (info.private_alphabets.back().empty()) throw ParseError("private alphabets must not be empty");
  }
  if (info.common_alphabet.empty()) throw ParseError("'common_alphabet' must not be empty");
  const std::size_t C = info.common_alphabet.size();
  const std::size_t P = info.private_indexer().size();
  info.common_update = flatten(require(in, "common_update", "info"), {P, A, O, C}, "common_update");
  const Json& pu = require(in, "private_updates", "info");
  if (!pu.is_array() || pu.size() != n) throw ParseError("'private_updates' needs one kernel per player");
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t Pi = info.private_alphabets[i].size();
    info.private_updates.push_back(flatten(
        pu[i], {Pi, m.actions[i].size(), m.observations[i].size(), Pi},
        "private_updates[" + std::to_string(i) + "]"));
  }
  if (in.contains("initial_private")) {
    const auto v = flatten(in.at("initial_private"), {n}, "initial_private");
    for (double x : v) info.initial_private.push_back(static_cast<int>(x));
  } else {
    info.initial_private.assign(n, 0);
  }
  if (in.contains("action_reveal") && !in.at("action_reveal").is_null()) {
    const auto v = flatten(in.at("action_reveal"), {C}, "action_reveal");
    std::vector<int> reveal;
    for (double x : v) reveal.push_back(static_cast<int>(x));
    info.action_reveal = std::move(reveal);
  }
  return {std::move(m), std::move(info)};
}

inline Json model_to_json(const PomgModel& m, const InfoStructure& info) {
  const std::size_t n = m.players.size();
  const std::size_t S = m.states.size();
  const std::size_t A = m.num_joint_actions();
  const std::size_t O = m.num_joint_observations();
  Json j;
  j["players"] = m.players;
  j["states"] = m.states;
  j["actions"] = m.actions;
  j["observations"] = m.observations;
  j["transition"] = detail::nest(m.transition, {S, A, S});
  j["emission"] = detail::nest(m.emission, {S, O});
  j["rewards"] = detail::nest(m.rewards, {n, S, A});
  j["prior"] = m.prior;
  j["discount"] = m.discount;
  Json in;
  in["common_alphabet"] = info.common_alphabet;
  in["private_alphabets"] = info.private_alphabets;
  in["common_update"] = detail::nest(info.common_update,
                                     {info.private_indexer().size(), A, O, info.common_alphabet.size()});
  Json pu = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t Pi = info.private_alphabets[i].size();
    pu.push_back(detail::nest(info.private_updates[i],
                              {Pi, m.actions[i].size(), m.observations[i].size(), Pi}));
  }
  in["private_updates"] = pu;
  in["initial_private"] = info.initial_private;
  if (info.action_reveal) in["action_reveal"] = *info.action_reveal;
  j["info"] = in;
  return j;
}

inline std::pair<PomgModel, InfoStructure> parse_model(const std::string& text) {
  return model_from_json(parse_json_text(text));
}

inline std::pair<PomgModel, InfoStructure> load_model(const std::string& path) {
  return parse_model(read_file(path));
}

inline std::string serialize_model(const PomgModel& m, const InfoStructure& info) {
  return model_to_json(m, info).dump(2) + "\n";
}

// A distribution over states, given as a bare array or {"mu_bar": [...]}.
inline Belief parse_mu_bar(const std::string& text, int num_states) {
  Json j = parse_json_text(text);
  if (j.is_object()) j = detail::require(j, "mu_bar", "");
  auto v = detail::flatten(j, {static_cast<std::size_t>(num_states)}, "mu_bar");
  if (std::any_of(v.begin(), v.end(), [](double x) { return x < 0.0; }) ||
      std::abs(sum(v) - 1.0) > 1e-12) {
    throw ParseError("mu_bar must be a probability vector over states");
  }
  return Belief::over_states(v);
}

// Truncated game artifacts ---------------------------------------------------

inline Json belief_to_json(const Belief& b) {
  Json arr = Json::array();
  for (const auto& [pt, w] : b) arr.push_back({{"state", pt.state}, {"history", pt.history}, {"mass", w}});
  return arr;
}

inline Belief belief_from_json(const Json& j) {
  std::vector<Belief::Entry> entries;
  for (const auto& e : j) {
    entries.emplace_back(Point{e.at("state").get<int>(), e.at("history").get<std::vector<int>>()},
                         e.at("mass").get<double>());
  }
  return Belief::from_entries(std::move(entries));
}

inline Json game_to_json(const TruncatedGame& g) {
  Json j;
  j["format"] = "pomg-truncated-game";
  j["ell"] = g.ell;
  j["num_players"] = g.num_players;
  j["discount"] = g.discount;
  j["reward_bound"] = g.reward_bound;
  j["num_private"] = g.num_private;
  j["num_actions"] = g.num_actions;
  j["num_common"] = g.num_common;
  j["base_measure"] = belief_to_json(g.base_measure);
  Json pres = Json::array();
  for (const auto& by_len : g.prescriptions) {
    Json per_player = Json::array();
    for (const auto& list : by_len) {
      Json tables = Json::array();
      for (const auto& p : list) tables.push_back(p.table);
      per_player.push_back(tables);
    }
    pres.push_back(per_player);
  }
  j["prescriptions"] = pres;
  Json nodes = Json::array();
  for (const auto& node : g.nodes) {
    Json nj;
    nj["window"] = node.window;
    nj["fallback"] = node.fallback;
    nj["belief"] = belief_to_json(node.belief);
    nj["rewards"] = {{"shape", {node.transitions.size(), g.num_players}}, {"data", node.rewards}};
    Json rows = Json::array();
    for (const auto& row : node.transitions) {
      Json r = Json::array();
      for (const auto& t : row) r.push_back({t.next, t.prob});
      rows.push_back(r);
    }
    nj["transitions"] = rows;
    nodes.push_back(nj);
  }
  j["windows"] = nodes;
  return j;
}

inline TruncatedGame game_from_json(const Json& j) {
  try {
    if (j.at("format") != "pomg-truncated-game") throw ParseError("not a truncated game artifact");
    TruncatedGame g;
    g.ell = j.at("ell").get<int>();
    g.num_players = j.at("num_players").get<int>();
    g.discount = j.at("discount").get<double>();
    g.reward_bound = j.at("reward_bound").get<double>();
    g.num_private = j.at("num_private").get<std::vector<int>>();
    g.num_actions = j.at("num_actions").get<std::vector<int>>();
    g.num_common = j.at("num_common").get<int>();
    g.base_measure = belief_from_json(j.at("base_measure"));
    const Json& pres = j.at("prescriptions");
    for (std::size_t k = 0; k < pres.size(); ++k) {
      std::vector<std::vector<Prescription>> per_player;
      for (int i = 0; i < g.num_players; ++i) {
        std::vector<Prescription> list;
        for (const auto& t : pres[k][i]) {
          list.push_back({i, static_cast<int>(k), t.get<std::vector<int>>()});
        }
        per_player.push_back(std::move(list));
      }
      g.prescriptions.push_back(std::move(per_player));
    }
    for (const auto& nj : j.at("windows")) {
      WindowNode node;
      node.window = nj.at("window").get<Window>();
      node.fallback = nj.at("fallback").get<bool>();
      node.belief = belief_from_json(nj.at("belief"));
      node.rewards = nj.at("rewards").at("data").get<std::vector<double>>();
      for (const auto& row : nj.at("transitions")) {
        std::vector<Transition> r;
        for (const auto& t : row) r.push_back({t[0].get<int>(), t[1].get<double>()});
        node.transitions.push_back(std::move(r));
      }
      g.nodes.push_back(std::move(node));
    }
    g.rebuild_index();
    return g;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed truncated game artifact: ") + e.what());
  }
}

// Solve reports carry their game so that they can be lifted on their own.
inline Json report_to_json(const SolveReport& r, const TruncatedGame& g) {
  Json j;
  j["format"] = "pomg-solve-report";
  j["method"] = r.method;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["exploitability"] = r.exploitability;
  j["values"] = r.values;
  j["profile"] = r.profile.mix;
  j["game"] = game_to_json(g);
  return j;
}

inline std::pair<SolveReport, TruncatedGame> report_from_json(const Json& j) {
  try {
    if (j.at("format") != "pomg-solve-report") throw ParseError("not a solve report");
    SolveReport r;
    r.method = j.at("method").get<std::string>();
    r.iterations = j.at("iterations").get<int>();
    r.residual = j.at("residual").get<double>();
    r.converged = j.at("converged").get<bool>();
    r.exploitability = j.at("exploitability").get<std::vector<double>>();
    r.values = j.at("values").get<std::vector<std::vector<double>>>();
    r.profile.mix = j.at("profile").get<std::vector<std::vector<std::vector<double>>>>();
    TruncatedGame g = game_from_json(j.at("game"));
    if (auto rep = validate_profile(g, r.profile); !rep.ok()) {
      throw ParseError("solve report profile is invalid: " + rep.to_string());
    }
    return {std::move(r), std::move(g)};
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed solve report: ") + e.what());
  }
}

inline Json certificate_to_json(const GapCertificate& c) {
  return Json{{"player", c.player},
              {"ell", c.ell},
              {"horizon", c.horizon},
              {"trunc_value", c.trunc_value},
              {"lifted_value", {c.lifted_lo, c.lifted_hi}},
              {"br_value", {c.br_lo, c.br_hi}},
              {"measured_gap", c.measured_gap},
              {"f_hat", c.f_hat},
              {"f_hat_i", c.f_hat_i},
              {"xi", c.xi},
              {"kappa", c.kappa},
              {"epsilon_theory", c.epsilon_theory},
              {"tail_bound", c.tail_bound},
              {"exploitability", c.exploitability},
              {"holds", c.holds},
              {"caveat", c.caveat}};
}

// CSV ------------------------------------------------------------------------

inline const char* kSweepHeader =
    "ell,player,trunc_value,lifted_value_lo,lifted_value_hi,br_value_hi,measured_gap,f_hat,"
    "f_hat_i,xi,kappa,epsilon_theory,tail_bound,exploitability,wall_time_ms";

inline std::string certificate_csv_row(const GapCertificate& c, double wall_time_ms) {
  std::string row = std::to_string(c.ell) + "," + std::to_string(c.player);
  for (double x : {c.trunc_value, c.lifted_lo, c.lifted_hi, c.br_hi, c.measured_gap, c.f_hat,
                   c.f_hat_i, c.xi, c.kappa, c.epsilon_theory, c.tail_bound, c.exploitability,
                   wall_time_ms}) {
    row += "," + format_number(x);
  }
  return row;
}

inline std::string forgetting_csv(const ForgettingCurve& c) {
  std::string out = "ell,f_hat";
  for (std::size_t i = 0; i < c.f_hat_i.size(); ++i) out += ",f_hat_" + std::to_string(i);
  out += "\n";
  for (std::size_t k = 0; k < c.lengths.size(); ++k) {
    out += std::to_string(c.lengths[k]) + "," + format_number(c.f_hat[k]);
    for (const auto& row : c.f_hat_i) out += "," + format_number(row[k]);
    out += "\n";
  }
  return out;
}

// SVG ------------------------------------------------------------------------

struct Series {
  std::string name;
  std::string color;
  std::vector<double> y;
};

// Line chart with shared x values, axes and a legend.
inline std::string line_chart_svg(const std::string& title, const std::string& x_label,
                                  const std::vector<double>& x, const std::vector<Series>& series) {
  const double W = 640, H = 400, L = 70, R = 170, T = 40, B = 50;
  double xmin = x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
  double xmax = x.empty() ? 1.0 : *std::max_element(x.begin(), x.end());
  double ymin = 0.0, ymax = 0.0;
  for (const auto& s : series) {
    for (double v : s.y) {
      if (std::isfinite(v)) {
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
      }
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;
  auto px = [&](double v) { return L + (v - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };
  auto f = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f(W) + "\" height=\"" + f(H) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + f(W / 2) + "\" y=\"20\" text-anchor=\"middle\">" + title + "</text>\n";
  s += "<line x1=\"" + f(L) + "\" y1=\"" + f(H - B) + "\" x2=\"" + f(W - R) + "\" y2=\"" + f(H - B) +
       "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + f(L) + "\" y1=\"" + f(T) + "\" x2=\"" + f(L) + "\" y2=\"" + f(H - B) +
       "\" stroke=\"black\"/>\n";
  for (double v : x) {
    s += "<text x=\"" + f(px(v)) + "\" y=\"" + f(H - B + 16) + "\" text-anchor=\"middle\">" +
         format_number(v) + "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double v = ymin + (ymax - ymin) * k / 4.0;
    s += "<text x=\"" + f(L - 6) + "\" y=\"" + f(py(v) + 4) + "\" text-anchor=\"end\">" +
         format_number(v) + "</text>\n";
  }
  s += "<text x=\"" + f((L + W - R) / 2) + "\" y=\"" + f(H - 12) + "\" text-anchor=\"middle\">" +
       x_label + "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& sr = series[k];
    std::string pts;
    for (std::size_t q = 0; q < x.size() && q < sr.y.size(); ++q) {
      if (!std::isfinite(sr.y[q])) continue;
      pts += (pts.empty() ? "" : " ") + f(px(x[q])) + "," + f(py(sr.y[q]));
    }
    s += "<polyline fill=\"none\" stroke=\"" + sr.color + "\" stroke-width=\"2\" points=\"" + pts +
         "\"/>\n";
    const double ly = T + 20.0 * static_cast<double>(k);
    s += "<line x1=\"" + f(W - R + 15) + "\" y1=\"" + f(ly) + "\" x2=\"" + f(W - R + 35) +
         "\" y2=\"" + f(ly) + "\" stroke=\"" + sr.color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + f(W - R + 40) + "\" y=\"" + f(ly + 4) + "\">" + sr.name + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace pomg

#endif  // POMG_IO_HPP_
