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

#ifndef GNEP_CORPUS_HPP_
#define GNEP_CORPUS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "gnep/economy.hpp"

namespace gnep {

// A bundled economy with its documented ground truth.  The claims are
// re-derived by the test suite's own oracles, never trusted as constants.
struct NamedEconomy {
  std::string name;
  Economy economy;
  std::string ground_truth;
};

namespace detail {

// Two-player finite table game with theta_i(x, y_i) = score(y_i, x_j),
// j the opponent: each payoff depends only on the deviation and the
// opponent's current label, so both players are own-independent.
template <class Score1, class Score2>
Economy opponent_table_game(const std::vector<std::string>& labels,
                            Score1&& score1, Score2&& score2) {
  FiniteSpace fs;
  fs.labels = labels;
  int m = static_cast<int>(labels.size());
  TablePayoff t1;
  TablePayoff t2;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int d = 0; d < m; ++d) {
        t1.entries.push_back(
            {{labels[a], labels[b]}, labels[d], score1(d, b)});
        t2.entries.push_back(
            {{labels[a], labels[b]}, labels[d], score2(a, d)});
      }
    }
  }
  std::vector<Payoff> pays;
  pays.emplace_back(std::move(t1));
  pays.emplace_back(std::move(t2));
  return Economy({fs, fs}, Unconstrained{}, std::move(pays));
}

}  // namespace detail

// Two players name a number in {0,...,M}.  Player 1's payoff is 1, 1/2, or 0
// as the named number exceeds, ties, or trails the opponent's; player 2's is
// the composed negation -theta_1((x_1, y_2), x_1), taking values in
// {0, -1/2, -1}.  Unique equilibrium (M, M); on the unbounded grid no
// equilibrium would exist, which is what the bound restores.
inline NamedEconomy bigger_number_game(int m) {
  if (m < 1) throw ModelError("bigger_number_game requires M >= 1");
  std::vector<std::string> labels;
  for (int k = 0; k <= m; ++k) labels.push_back(std::to_string(k));
  auto rank = [](int a, int b) {
    return a > b ? 1.0 : a == b ? 0.5 : 0.0;
  };
  Economy econ = detail::opponent_table_game(
      labels, [&](int y1, int x2) { return rank(y1, x2); },
      [&](int x1, int y2) { return -rank(x1, y2); });
  return {"bigger-number-" + std::to_string(m), std::move(econ),
          "unique equilibrium (" + std::to_string(m) + "," +
              std::to_string(m) +
              "); derived by exhaustive enumeration of all profiles"};
}

inline NamedEconomy prisoners_dilemma() {
  // row[y][opponent]: C vs C -> 3, C vs D -> 0, D vs C -> 5, D vs D -> 1
  auto row = [](int y, int opp) {
    if (y == 0) return opp == 0 ? 3.0 : 0.0;
    return opp == 0 ? 5.0 : 1.0;
  };
  Economy econ = detail::opponent_table_game(
      {"C", "D"}, [&](int y1, int x2) { return row(y1, x2); },
      [&](int x1, int y2) { return row(y2, x1); });
  return {"prisoners-dilemma", std::move(econ),
          "unique equilibrium (D,D); derived by exhaustive enumeration of "
          "the 4 profiles"};
}

inline NamedEconomy matching_pennies() {
  auto match1 = [](int y1, int x2) { return y1 == x2 ? 1.0 : -1.0; };
  auto match2 = [](int x1, int y2) { return y2 == x1 ? -1.0 : 1.0; };
  Economy econ = detail::opponent_table_game({"H", "T"}, match1, match2);
  return {"matching-pennies", std::move(econ),
          "no equilibrium; derived by exhaustive enumeration of the 4 "
          "profiles"};
}

// Two budget shares coupled by x1 + x2 <= 1; each player's payoff
// y*(2 - y - x_j) rises past every admissible y, so both push to the
// boundary: the equilibrium set is the whole line {(a, 1-a) : a in [0,1]}.
inline NamedEconomy shared_link_game() {
  BoxSpace unit{{0.0}, {1.0}};
  SharedConstraint sc;
  sc.inequalities.push_back(parse_expr("x[1][0] + x[2][0] - 1"));
  std::vector<Payoff> pays;
  pays.emplace_back(FormulaPayoff{parse_expr("y[0]*(2 - y[0] - x[2][0])")});
  pays.emplace_back(FormulaPayoff{parse_expr("y[0]*(2 - y[0] - x[1][0])")});
  Economy econ({unit, unit}, std::move(sc), std::move(pays));
  return {"shared-link", std::move(econ),
          "equilibrium set {(a, 1-a) : a in [0,1]}; derived from analytic "
          "best replies and reproduced by a grid oracle"};
}

// Admissible set {(0,0), (1,1)}: each player's slice is the singleton
// matching the other, so both diagonal points are equilibria, yet the joint
// deviation (0,0) -> (1,1) gains 2.  Separates the one-directional tilde
// criterion from the equilibrium property.
inline NamedEconomy locked_pair_game() {
  FiniteSpace fs;
  fs.labels = {"0", "1"};
  SharedConstraint sc;
  sc.inequalities.push_back(parse_expr("abs(x[1][0] - x[2][0])"));
  std::vector<Payoff> pays;
  pays.emplace_back(FormulaPayoff{parse_expr("y[0] + x[2][0]")});
  pays.emplace_back(FormulaPayoff{parse_expr("y[0] + x[1][0]")});
  Economy econ({fs, fs}, std::move(sc), std::move(pays));
  return {"locked-pair", std::move(econ),
          "equilibria {(0,0), (1,1)}; tilde value 2 at (0,0) and 0 at (1,1); "
          "derived by enumeration of the admissible pairs"};
}

inline std::vector<std::string> corpus_names() {
  return {"prisoners-dilemma", "matching-pennies", "shared-link",
          "locked-pair", "bigger-number-<M>"};
}

inline NamedEconomy corpus_economy(const std::string& name) {
  if (name == "prisoners-dilemma") return prisoners_dilemma();
  if (name == "matching-pennies") return matching_pennies();
  if (name == "shared-link") return shared_link_game();
  if (name == "locked-pair") return locked_pair_game();
  const std::string prefix = "bigger-number-";
  if (name.rfind(prefix, 0) == 0) {
    const std::string digits = name.substr(prefix.size());
    if (!digits.empty() &&
        digits.find_first_not_of("0123456789") == std::string::npos &&
        digits.size() <= 4) {
      int m = std::stoi(digits);
      if (m >= 1) return bigger_number_game(m);
    }
  }
  std::string names;
  for (const std::string& n : corpus_names()) {
    if (!names.empty()) names += ", ";
    names += n;
  }
  throw ModelError("unknown corpus economy '" + name +
                   "'; available: " + names);
}

}  // namespace gnep

#endif  // GNEP_CORPUS_HPP_
