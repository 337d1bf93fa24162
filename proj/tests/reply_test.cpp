// Copyright 2026 The gnep Authors
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

#include "gnep/reply.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "test_support.hpp"

namespace gnep {
namespace {

// Two players pick numbers 0..m; outscoring the opponent's current number
// pays 1, tying pays 1/2. Player 2's payoff mirrors player 1's with the
// roles composed, landing in {0, -1/2, -1}.
Economy number_duel(int m) {
  FiniteSpace fs;
  for (int k = 0; k <= m; ++k) {
    fs.labels.push_back(std::to_string(k));
    fs.points.push_back({static_cast<double>(k)});
  }
  auto score = [](int mine, int theirs) {
    if (mine > theirs) return 1.0;
    if (mine == theirs) return 0.5;
    return 0.0;
  };
  TablePayoff t1, t2;
  for (int a = 0; a <= m; ++a) {
    for (int b = 0; b <= m; ++b) {
      for (int d = 0; d <= m; ++d) {
        std::vector<std::string> prof{std::to_string(a), std::to_string(b)};
        t1.entries.push_back(
            TableEntry{prof, std::to_string(d), score(d, b)});
        t2.entries.push_back(
            TableEntry{prof, std::to_string(d), -score(a, d)});
      }
    }
  }
  return Economy({fs, fs}, Unconstrained{}, {t1, t2});
}

Economy single_player_bump() {
  return Economy({BoxSpace{{0.0}, {1.0}}}, Unconstrained{},
                 {FormulaPayoff{parse_expr("y[0]*(1-y[0])")}});
}

Economy link_economy() {
  BoxSpace unit{{0.0}, {1.0}};
  SharedConstraint sc;
  sc.inequalities.push_back(parse_expr("x[1][0] + x[2][0] - 1"));
  std::vector<Payoff> pays;
  pays.emplace_back(FormulaPayoff{parse_expr("y[0]*(2 - y[0] - x[2][0])")});
  pays.emplace_back(FormulaPayoff{parse_expr("y[0]*(2 - y[0] - x[1][0])")});
  return Economy({unit, unit}, std::move(sc), std::move(pays));
}

TEST(BestReply, DilemmaTableArgmax) {
  Economy econ = testing::dilemma_economy();
  GlobalDecision cc = decision_from_labels(econ, {"C", "C"});
  EXPECT_EQ(marginal_value(econ, 1, cc), 5.0);
  BestReplySet br = best_reply(econ, 1, cc);
  EXPECT_TRUE(br.exact);
  EXPECT_EQ(br.value, 5.0);
  ASSERT_EQ(br.labels.size(), 1u);
  EXPECT_EQ(br.labels[0], econ.label_index(1, "D"));
  EXPECT_EQ(br.best.label, econ.label_index(1, "D"));
}

TEST(BestReply, NumberDuelArgmaxSet) {
  Economy econ = number_duel(9);
  GlobalDecision x = decision_from_labels(econ, {"3", "5"});
  EXPECT_EQ(marginal_value(econ, 1, x), 1.0);
  BestReplySet br = best_reply(econ, 1, x);
  std::vector<int> expect;
  for (int k = 6; k <= 9; ++k) expect.push_back(econ.label_index(1, std::to_string(k)));
  EXPECT_EQ(br.labels, expect);
}

TEST(BestReply, AllTiesKeepEveryLabel) {
  FiniteSpace ab;
  ab.labels = {"A", "B"};
  Economy econ({ab}, Unconstrained{}, {FormulaPayoff{parse_expr("0")}});
  GlobalDecision x = decision_from_labels(econ, {"A"});
  BestReplySet br = best_reply(econ, 1, x);
  EXPECT_EQ(br.labels, (std::vector<int>{0, 1}));
  EXPECT_EQ(br.value, 0.0);
}

TEST(BestReply, BoxInteriorMaximum) {
  Economy econ = single_player_bump();
  GlobalDecision x = decision_from_coords(econ, {{0.2}});
  BestReplySet br = best_reply(econ, 1, x);
  EXPECT_FALSE(br.exact);
  EXPECT_TRUE(br.converged);
  EXPECT_NEAR(br.value, 0.25, 1e-8);
  ASSERT_FALSE(br.points.empty());
  EXPECT_NEAR(br.points[0][0], 0.5, 1e-4);
  // the reported best point attains the reported value exactly
  EXPECT_EQ(br.best.coords[0] * (1 - br.best.coords[0]), br.value);
}

TEST(BestReply, MarginalDominatesCurrentPayoff) {
  Economy econ = link_economy();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    double x1 = u(rng);
    double x2 = u(rng) * (1.0 - x1);
    GlobalDecision x = decision_from_coords(econ, {{x1}, {x2}});
    ASSERT_TRUE(is_feasible(econ, x));
    for (int i = 1; i <= 2; ++i) {
      double cur = payoff_value(econ, i, x, x.points[i - 1]);
      EXPECT_GE(marginal_value(econ, i, x), cur);
    }
  }
}

TEST(BestReply, SliceBoundaryIsHitExactly) {
  Economy econ = link_economy();
  GlobalDecision x = decision_from_coords(econ, {{0.3}, {0.3}});
  // theta_1 rises on [0, 0.7]; the slice endpoint 0.7 is the argmax
  BestReplySet br = best_reply(econ, 1, x);
  EXPECT_EQ(br.best.coords[0], 0.7);
  EXPECT_EQ(br.value, 0.7 * (2 - 0.7 - 0.3));
}

TEST(BestReply, EmptySliceIsAnError) {
  SharedConstraint sc;
  sc.inequalities.push_back(parse_expr("1"));
  Economy econ({BoxSpace{{0.0}, {1.0}}}, std::move(sc),
               {FormulaPayoff{parse_expr("y[0]")}});
  GlobalDecision x;
  x.points.push_back(DecisionPoint{-1, {0.5}});
  try {
    marginal_value(econ, 1, x);
    FAIL() << "expected EmptySliceError";
  } catch (const EmptySliceError& e) {
    EXPECT_EQ(e.player(), 1);
    EXPECT_NE(std::string(e.what()).find("no admissible decision"),
              std::string::npos);
  }
}

TEST(GlobalBestReply, FactoredPerPlayer) {
  Economy econ = testing::dilemma_economy();
  GlobalDecision cc = decision_from_labels(econ, {"C", "C"});
  std::vector<BestReplySet> phi = global_best_reply(econ, cc);
  ASSERT_EQ(phi.size(), 2u);
  EXPECT_EQ(phi[0].labels, std::vector<int>{1});
  EXPECT_EQ(phi[1].labels, std::vector<int>{1});

  GlobalDecision dd = decision_from_labels(econ, {"D", "D"});
  phi = global_best_reply(econ, dd);
  EXPECT_EQ(phi[0].labels, std::vector<int>{1});
  EXPECT_EQ(phi[1].labels, std::vector<int>{1});
}

TEST(NashCheck, DilemmaVerdicts) {
  Economy econ = testing::dilemma_economy();
  EquilibriumReport dd =
      is_nash_equilibrium(econ, decision_from_labels(econ, {"D", "D"}));
  EXPECT_EQ(dd.verdict, Verdict::equilibrium);
  EXPECT_TRUE(dd.feasible);

  EquilibriumReport cc =
      is_nash_equilibrium(econ, decision_from_labels(econ, {"C", "C"}));
  EXPECT_EQ(cc.verdict, Verdict::not_equilibrium);
  ASSERT_TRUE(cc.witness_player.has_value());
  EXPECT_EQ(*cc.witness_player, 1);
  const PlayerCheck& pc = cc.checks[0];
  EXPECT_EQ(pc.improvement, 2.0);
  EXPECT_EQ(pc.best.label, econ.label_index(1, "D"));
}

TEST(NashCheck, NumberDuelDiagonalTop) {
  Economy econ = number_duel(9);
  EquilibriumReport rep =
      is_nash_equilibrium(econ, decision_from_labels(econ, {"9", "9"}));
  EXPECT_EQ(rep.verdict, Verdict::equilibrium);

  rep = is_nash_equilibrium(econ, decision_from_labels(econ, {"3", "5"}));
  EXPECT_EQ(rep.verdict, Verdict::not_equilibrium);
}

TEST(NashCheck, BoxVerdictsOnBump) {
  Economy econ = single_player_bump();
  EquilibriumReport at_half =
      is_nash_equilibrium(econ, decision_from_coords(econ, {{0.5}}));
  EXPECT_EQ(at_half.verdict, Verdict::equilibrium);
  EXPECT_TRUE(at_half.checks[0].certified);

  EquilibriumReport off =
      is_nash_equilibrium(econ, decision_from_coords(econ, {{0.2}}));
  EXPECT_EQ(off.verdict, Verdict::not_equilibrium);
  ASSERT_TRUE(off.witness_player.has_value());
  // the witness deviation realizes the claimed improvement on re-evaluation
  const PlayerCheck& pc = off.checks[0];
  double re = payoff_value(econ, 1, decision_from_coords(econ, {{0.2}}),
                           pc.best);
  EXPECT_EQ(re, pc.marginal);
  EXPECT_GT(re - pc.current, 1e-6);
}

TEST(NashCheck, SharedLinkLineIsEquilibrium) {
  Economy econ = link_economy();
  for (double a : {0.5, 0.3, 0.0, 1.0}) {
    GlobalDecision x = decision_from_coords(econ, {{a}, {1.0 - a}});
    EquilibriumReport rep = is_nash_equilibrium(econ, x);
    EXPECT_EQ(rep.verdict, Verdict::equilibrium) << "a=" << a;
  }
  GlobalDecision inside = decision_from_coords(econ, {{0.3}, {0.3}});
  EquilibriumReport rep = is_nash_equilibrium(econ, inside);
  EXPECT_EQ(rep.verdict, Verdict::not_equilibrium);
  EXPECT_NEAR(rep.checks[0].improvement, 0.7 - 0.42, 1e-12);
}

TEST(NashCheck, InfeasiblePointIsNotEquilibrium) {
  Economy econ = link_economy();
  GlobalDecision x = decision_from_coords(econ, {{0.8}, {0.8}});
  EquilibriumReport rep = is_nash_equilibrium(econ, x);
  EXPECT_EQ(rep.verdict, Verdict::not_equilibrium);
  EXPECT_FALSE(rep.feasible);
}

TEST(PhiFixedPoint, MatchesDefinitionOnTables) {
  Economy econ = testing::dilemma_economy();
  EXPECT_TRUE(is_phi_fixed_point(econ, decision_from_labels(econ, {"D", "D"})));
  EXPECT_FALSE(
      is_phi_fixed_point(econ, decision_from_labels(econ, {"C", "D"})));
  EXPECT_FALSE(
      is_phi_fixed_point(econ, decision_from_labels(econ, {"C", "C"})));
}

TEST(PhiFixedPoint, AgreesWithDirectCheckOnRandomEconomies) {
  std::mt19937_64 rng(20260822);
  for (int inst = 0; inst < 40; ++inst) {
    testing::RandomEconomyOptions opt;
    opt.shared = (inst % 2) == 1;
    Economy econ = testing::random_finite_economy(rng, opt);
    for (long f = 0; f < econ.profile_count(); ++f) {
      GlobalDecision x = decision_from_flat(econ, f);
      if (!is_feasible(econ, x)) continue;
      bool empty = false;
      for (int i = 1; i <= econ.players(); ++i) {
        if (feasible_slice(econ, i, x).is_empty()) empty = true;
      }
      if (empty) continue;
      bool direct =
          is_nash_equilibrium(econ, x).verdict == Verdict::equilibrium;
      EXPECT_EQ(direct, is_phi_fixed_point(econ, x))
          << "instance " << inst << " profile " << f;
    }
  }
}

TEST(BestReply, NeverEmptyOnNonemptySlices) {
  std::mt19937_64 rng(5);
  for (int inst = 0; inst < 20; ++inst) {
    testing::RandomEconomyOptions opt;
    opt.shared = true;
    Economy econ = testing::random_finite_economy(rng, opt);
    for (long f = 0; f < econ.profile_count(); ++f) {
      GlobalDecision x = decision_from_flat(econ, f);
      for (int i = 1; i <= econ.players(); ++i) {
        FeasibleSlice s = feasible_slice(econ, i, x);
        if (s.is_empty()) continue;
        BestReplySet br = best_reply(econ, i, x);
        EXPECT_FALSE(br.labels.empty());
        // every reported reply is admissible and optimal
        for (int l : br.labels) {
          EXPECT_TRUE(slice_contains(econ, i, s, point_from_label(econ, i, l)));
          EXPECT_EQ(payoff_value(econ, i, x, point_from_label(econ, i, l)),
                    br.value);
        }
      }
    }
  }
}

}  // namespace
}  // namespace gnep
