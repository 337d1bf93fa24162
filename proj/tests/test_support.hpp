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

// Deterministic random economies for property tests. Payoffs are dyadic
// rationals (multiples of 1/8), so sums and comparisons downstream are
// exact in double arithmetic.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "gnep/economy.hpp"

namespace gnep {
namespace testing {

struct RandomEconomyOptions {
  int max_players = 3;
  int max_labels = 5;
  // Attach a shared affine inequality over the label coordinates, anchored
  // at a random profile so the admissible set is never empty.
  bool shared = false;
};

inline Economy random_finite_economy(std::mt19937_64& rng,
                                     const RandomEconomyOptions& opt = {}) {
  std::uniform_int_distribution<int> nplayers(1, opt.max_players);
  std::uniform_int_distribution<int> nlabels(2, opt.max_labels);
  std::uniform_int_distribution<int> dyadic(-16, 16);
  std::uniform_int_distribution<int> coef(-2, 2);

  const int n = nplayers(rng);
  std::vector<DecisionSpace> spaces;
  std::vector<int> sizes;
  for (int i = 0; i < n; ++i) {
    FiniteSpace fs;
    const int m = nlabels(rng);
    for (int l = 0; l < m; ++l) fs.labels.push_back(std::to_string(l));
    spaces.emplace_back(std::move(fs));
    sizes.push_back(m);
  }

  ConstraintSpec constraint = Unconstrained{};
  if (opt.shared) {
    // g(x) = sum_i a_i * x_i - g(anchor) <= 0 keeps the anchor profile
    // feasible; label coordinates default to the label index.
    std::vector<int> a;
    std::string sum;
    for (int i = 0; i < n; ++i) {
      a.push_back(coef(rng));
      if (i) sum += " + ";
      sum += std::to_string(a.back()) + " * x[" + std::to_string(i + 1) +
             "][0]";
    }
    double anchor = 0.0;
    for (int i = 0; i < n; ++i) {
      anchor += a[i] * static_cast<double>(
                           std::uniform_int_distribution<int>(0, sizes[i] - 1)(
                               rng));
    }
    SharedConstraint sc;
    sc.inequalities.push_back(
        parse_expr(sum + " - (" + format_double(anchor) + ")"));
    constraint = std::move(sc);
  }

  std::vector<Payoff> payoffs;
  for (int i = 0; i < n; ++i) {
    TablePayoff tp;
    std::vector<int> ix(n, 0);
    while (true) {
      TableEntry e;
      for (int j = 0; j < n; ++j) e.profile.push_back(std::to_string(ix[j]));
      for (int d = 0; d < sizes[i]; ++d) {
        TableEntry ed = e;
        ed.deviation = std::to_string(d);
        ed.value = dyadic(rng) / 8.0;
        tp.entries.push_back(std::move(ed));
      }
      int k = n - 1;
      for (; k >= 0; --k) {
        if (++ix[k] < sizes[k]) break;
        ix[k] = 0;
      }
      if (k < 0) break;
    }
    payoffs.emplace_back(std::move(tp));
  }

  return Economy(std::move(spaces), std::move(constraint), std::move(payoffs));
}

// Classic 2x2 dilemma: defect strictly dominates, (D,D) is the unique
// equilibrium. theta_i reads table[deviation, opponent component].
inline Economy dilemma_economy() {
  FiniteSpace cd;
  cd.labels = {"C", "D"};
  cd.points = {{0.0}, {1.0}};
  auto row = [](const char* dev, const char* opp) {
    if (dev[0] == 'C') return opp[0] == 'C' ? 3.0 : 0.0;
    return opp[0] == 'C' ? 5.0 : 1.0;
  };
  TablePayoff t1, t2;
  for (const char* a : {"C", "D"}) {
    for (const char* b : {"C", "D"}) {
      for (const char* d : {"C", "D"}) {
        t1.entries.push_back(TableEntry{{a, b}, d, row(d, b)});
        t2.entries.push_back(TableEntry{{a, b}, d, row(d, a)});
      }
    }
  }
  return Economy({cd, cd}, Unconstrained{}, {t1, t2});
}

}  // namespace testing
}  // namespace gnep
