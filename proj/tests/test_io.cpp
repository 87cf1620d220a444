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


#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pomg/io.hpp"
#include "pomg/pipeline.hpp"

namespace pomg {
namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

TEST(ModelFile, RoundTripsCanonically) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto [m, info] = testing::random_model(seed);
    const std::string text = serialize_model(m, info);
    const auto [m2, info2] = parse_model(text);
    EXPECT_EQ(serialize_model(m2, info2), text);
    EXPECT_EQ(m2.transition, m.transition);
    EXPECT_EQ(info2.common_update, info.common_update);
    EXPECT_EQ(info2.action_reveal, info.action_reveal);
  }
}

TEST(ModelFile, BundledFixtureIsCanonical) {
  const std::string text = read_file(std::string(POMG_SOURCE_DIR) + "/data/minimp.json");
  const auto [m, info] = parse_model(text);
  EXPECT_TRUE(validate_model(m, info).ok());
  EXPECT_EQ(serialize_model(m, info), text);
  const auto [ref, ref_info] = make_mini_mp();
  EXPECT_EQ(m.rewards, ref.rewards);
}

TEST(ModelFile, MissingInfoSectionIsNamed) {
  const auto [m, info] = make_mini_mp();
  Json j = model_to_json(m, info);
  j.erase("info");
  try {
    model_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'info'"), std::string::npos);
  }
}

TEST(ModelFile, SyntaxErrorsCarryLineAndColumn) {
  try {
    parse_model("{\n  \"players\": [\"p0\",\n  ,]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 0);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ModelFile, ShapeErrorsNameThePath) {
  const auto [m, info] = make_mini_mp();
  Json j = model_to_json(m, info);
  j["transition"][1][2].erase(1);
  try {
    model_from_json(j);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("transition[1][2]"), std::string::npos) << e.what();
  }
}

TEST(MuBar, AcceptsArrayOrObject) {
  EXPECT_NEAR(parse_mu_bar("[0.25, 0.75]", 2).mass({1, {}}), 0.75, 0.0);
  EXPECT_NEAR(parse_mu_bar("{\"mu_bar\": [1, 0]}", 2).mass({0, {}}), 1.0, 0.0);
  EXPECT_THROW(parse_mu_bar("[0.5, 0.6]", 2), ParseError);
  EXPECT_THROW(parse_mu_bar("[1.5, -0.5]", 2), ParseError);
  EXPECT_THROW(parse_mu_bar("[1]", 2), ParseError);
}

TEST(GameArtifact, RoundTrips) {
  const auto [m, info] = testing::random_example1(1, true);
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  const std::string a = game_to_json(g).dump();
  const TruncatedGame back = game_from_json(parse_json_text(a));
  EXPECT_EQ(game_to_json(back).dump(), a);
  ASSERT_EQ(back.num_states(), g.num_states());
  for (int x = 0; x < g.num_states(); ++x) EXPECT_EQ(back.find(g.nodes[x].window), x);
}

TEST(SolveReportArtifact, RoundTrips) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  const TruncatedGame g = build_truncated_game(dyn, 1);
  const SolveReport r = solve_zero_sum(g);
  const std::string a = report_to_json(r, g).dump();
  const auto [r2, g2] = report_from_json(parse_json_text(a));
  EXPECT_EQ(report_to_json(r2, g2).dump(), a);
  EXPECT_THROW(report_from_json(Json{{"format", "other"}}), ParseError);
}

TEST(Csv, NumbersAndColumns) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(0.125), "0.125");
  GapCertificate c;
  c.ell = 2;
  c.player = 1;
  c.xi = 0.8;
  const std::string row = certificate_csv_row(c, 0.0);
  EXPECT_EQ(count(row, ","), count(kSweepHeader, ","));
  EXPECT_EQ(row.rfind("2,1,", 0), 0u);
  EXPECT_EQ(std::string(kSweepHeader).rfind("ell,player,trunc_value,lifted_value_lo", 0), 0u);
}

TEST(Csv, ForgettingTable) {
  const auto [m, info] = make_dobrushin_model();
  const Dynamics dyn(m, info);
  const std::string csv = forgetting_csv(estimate_forgetting(dyn, 2));
  EXPECT_EQ(csv.rfind("ell,f_hat,f_hat_0,f_hat_1\n0,1,", 0), 0u);
  EXPECT_EQ(count(csv, "\n"), 4u);
}

TEST(Svg, OnePolylinePerSeries) {
  const std::string svg = line_chart_svg("t", "x", {0, 1, 2}, {{"a", "#000", {1, 2, 3}},
                                                                {"b", "#f00", {0, 0.5, 0.25}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Sweep, MiniMatchingPenniesGapsShrinkAndHold) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  SweepOptions opt;
  opt.horizon = 5;
  const auto out = run_sweep(dyn, Belief::over_states(m.prior), {0, 1, 2}, opt);
  EXPECT_TRUE(out.errors.empty());
  EXPECT_TRUE(out.all_hold);
  ASSERT_EQ(out.certificates.size(), 6u);
  for (int i = 0; i < 2; ++i) {
    for (int ell = 1; ell <= 2; ++ell) {
      EXPECT_LE(out.certificates[2 * ell + i].measured_gap,
                out.certificates[2 * (ell - 1) + i].measured_gap + 1e-12);
    }
  }
  EXPECT_EQ(count(out.csv, "\n"), 7u);
  const auto again = run_sweep(dyn, Belief::over_states(m.prior), {0, 1, 2}, opt);
  EXPECT_EQ(again.csv, out.csv);
  EXPECT_EQ(again.svg, out.svg);
}

TEST(Sweep, SingleStateGapsWithinTail) {
  PublicSignalSpec spec;
  spec.states = 1;
  spec.signals = 1;
  spec.actions = {2, 2};
  spec.transition = {1, 1, 1, 1};
  spec.signal = {1};
  spec.rewards = {1, -1, -1, 1, -1, 1, 1, -1};
  const auto [m, info] = make_public_signal_model(spec);
  const Dynamics dyn(m, info);
  SweepOptions opt;
  opt.horizon = 4;
  const auto out = run_sweep(dyn, Belief::over_states(m.prior), {0, 1}, opt);
  ASSERT_EQ(out.certificates.size(), 4u);
  for (const auto& c : out.certificates) EXPECT_LE(c.measured_gap, 2.0 * c.tail_bound + 1e-12);
}

TEST(Sweep, BudgetOverrunsAreReportedPerLength) {
  const auto [m, info] = make_mini_mp();
  const Dynamics dyn(m, info);
  Budgets small;
  small.sizes = 5;
  const auto out = run_sweep(dyn, Belief::over_states(m.prior), {0, 1}, {}, small);
  EXPECT_TRUE(out.budget_exceeded);
  EXPECT_EQ(out.certificates.size(), 2u);
  ASSERT_EQ(out.errors.size(), 1u);
  EXPECT_EQ(out.errors[0].rfind("ell 1:", 0), 0u);
}

}  // namespace
}  // namespace pomg
