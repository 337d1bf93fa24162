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

// Best replies and direct equilibrium verification.
//
// phi_i(x) = sup{ theta_i(x, y) : y in X_i(x) } is the marginal value of
// player i's unilateral deviation problem; the best-reply set collects its
// argmax. x is a Nash equilibrium when it is feasible and no player can
// improve by more than tol_eq through an admissible deviation.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gnep/config.hpp"
#include "gnep/economy.hpp"
#include "gnep/errors.hpp"
#include "gnep/grid.hpp"

namespace gnep {

// Argmax of theta_i(x, .) over X_i(x). Finite slices are exact (labels in
// ascending order, ties by exact value equality); Box slices hold grid
// representatives within tol_opt of the incumbent value, lexicographically
// ordered, deduplicated at tol_dedup.
struct BestReplySet {
  int player = 0;
  double value = -std::numeric_limits<double>::infinity();
  std::vector<int> labels;
  std::vector<std::vector<double>> points;
  // Deviation that attains value exactly.
  DecisionPoint best;
  double tol_opt = 0.0;
  bool exact = false;
  // Box slices: the final refinement round improved the incumbent by at
  // most tol_opt, so the value is trusted as the slice-wide supremum.
  bool converged = false;
};

enum class Verdict { equilibrium, not_equilibrium, inconclusive };

inline const char* to_cstring(Verdict v) {
  switch (v) {
    case Verdict::equilibrium: return "equilibrium";
    case Verdict::not_equilibrium: return "not equilibrium";
    default: return "inconclusive";
  }
}

struct PlayerCheck {
  int player = 0;
  // theta_i(x, x_i)
  double current = 0.0;
  // phi_i(x)
  double marginal = 0.0;
  double improvement = 0.0;
  // Admissible deviation attaining marginal.
  DecisionPoint best;
  // Exact slice or converged refinement: improvement is trusted.
  bool certified = false;
};

struct EquilibriumReport {
  Verdict verdict = Verdict::inconclusive;
  bool feasible = false;
  double tol_eq = 0.0;
  std::vector<PlayerCheck> checks;
  // Improving player backing a not-equilibrium verdict.
  std::optional<int> witness_player;
  std::string note;
};

namespace detail {

// Shared-constraint SubBoxes may over-cover X_i(x); candidate deviations are
// re-checked pointwise. Returns -inf for inadmissible points.
template <class Theta>
GridSearchResult maximize_over_slice(const Economy& econ, int i,
                                     const GlobalDecision& x, const SubBox& b,
                                     Theta&& theta, const Config& cfg) {
  const auto* sc = std::get_if<SharedConstraint>(&econ.constraint());
  Binding feas = make_binding(econ, x);
  const int off = feas.offsets[i - 1];
  auto f = [&](const std::vector<double>& t) {
    if (sc) {
      for (std::size_t k = 0; k < t.size(); ++k) feas.x_vals[off + k] = t[k];
      for (const Expr& g : sc->inequalities) {
        if (evaluate(g, feas) > cfg.tol_feas) {
          return -std::numeric_limits<double>::infinity();
        }
      }
    }
    return theta(t);
  };
  std::vector<std::vector<double>> injected;
  injected.push_back(x.points[i - 1].coords);
  return grid_maximize(b.lower, b.upper, f, cfg, injected);
}

}  // namespace detail

inline BestReplySet best_reply(const Economy& econ, int i,
                               const GlobalDecision& x,
                               const Config& cfg = {}) {
  FeasibleSlice slice = feasible_slice(econ, i, x, cfg);
  if (slice.is_empty()) {
    throw EmptySliceError(i, "player has no admissible decision");
  }
  BestReplySet out;
  out.player = i;
  Binding scratch = make_binding(econ, x);

  if (slice.is_finite()) {
    out.exact = true;
    out.converged = true;
    out.tol_opt = 0.0;
    std::vector<double> vals;
    for (int l : slice.finite().labels) {
      vals.push_back(
          payoff_value(econ, i, x, point_from_label(econ, i, l), scratch));
      out.value = std::max(out.value, vals.back());
    }
    for (std::size_t k = 0; k < vals.size(); ++k) {
      if (vals[k] == out.value) out.labels.push_back(slice.finite().labels[k]);
    }
    out.best = point_from_label(econ, i, out.labels.front());
    return out;
  }

  auto theta = [&](const std::vector<double>& t) {
    DecisionPoint y{-1, t};
    return payoff_value(econ, i, x, y, scratch);
  };
  GridSearchResult gr =
      detail::maximize_over_slice(econ, i, x, slice.box(), theta, cfg);
  if (gr.best_point.empty() || !std::isfinite(gr.value)) {
    // every probed point of the enclosure failed the admissibility re-check
    throw EmptySliceError(i, "player has no admissible decision");
  }
  out.value = gr.value;
  out.points = std::move(gr.maximizers);
  out.best = DecisionPoint{-1, std::move(gr.best_point)};
  out.tol_opt = cfg.tol_opt;
  out.converged = gr.converged;
  return out;
}

inline double marginal_value(const Economy& econ, int i,
                             const GlobalDecision& x, const Config& cfg = {}) {
  return best_reply(econ, i, x, cfg).value;
}

// One BestReplySet per player; the product set is kept factored.
inline std::vector<BestReplySet> global_best_reply(const Economy& econ,
                                                   const GlobalDecision& x,
                                                   const Config& cfg = {}) {
  std::vector<BestReplySet> out;
  for (int i = 1; i <= econ.players(); ++i) {
    out.push_back(best_reply(econ, i, x, cfg));
  }
  return out;
}

inline EquilibriumReport is_nash_equilibrium(const Economy& econ,
                                             const GlobalDecision& x,
                                             const Config& cfg = {}) {
  EquilibriumReport rep;
  rep.tol_eq = cfg.tol_eq;
  rep.feasible = is_feasible(econ, x, cfg);
  if (!rep.feasible) {
    rep.verdict = Verdict::not_equilibrium;
    rep.note = "x is not feasible (x_i outside X_i(x) for some player)";
    return rep;
  }

  Binding scratch = make_binding(econ, x);
  bool certified = true;
  double worst = -std::numeric_limits<double>::infinity();
  int worst_player = 0;
  for (int i = 1; i <= econ.players(); ++i) {
    BestReplySet br = best_reply(econ, i, x, cfg);
    PlayerCheck pc;
    pc.player = i;
    pc.current = payoff_value(econ, i, x, x.points[i - 1], scratch);
    pc.marginal = br.value;
    pc.improvement = br.value - pc.current;
    pc.best = br.best;
    pc.certified = br.exact || br.converged;
    certified = certified && pc.certified;
    if (pc.improvement > worst) {
      worst = pc.improvement;
      worst_player = i;
    }
    rep.checks.push_back(std::move(pc));
  }

  if (worst > cfg.tol_eq) {
    rep.verdict = Verdict::not_equilibrium;
    rep.witness_player = worst_player;
  } else if (certified) {
    rep.verdict = Verdict::equilibrium;
  } else {
    rep.verdict = Verdict::inconclusive;
    rep.note = "improvement bound not certified within budget";
  }
  return rep;
}

// x in Phi(x): every x_i is a best reply to x. Finite slices test exact
// argmax membership; Box slices accept when theta_i(x, x_i) comes within
// cfg.tol_eq of phi_i(x).
inline bool is_phi_fixed_point(const Economy& econ, const GlobalDecision& x,
                               const Config& cfg = {}) {
  Binding scratch = make_binding(econ, x);
  for (int i = 1; i <= econ.players(); ++i) {
    BestReplySet br = best_reply(econ, i, x, cfg);
    if (br.exact) {
      const DecisionPoint& own = x.points[i - 1];
      bool member = false;
      for (int l : br.labels) {
        if (l == own.label) {
          member = true;
          break;
        }
      }
      if (!member) return false;
    } else {
      double cur = payoff_value(econ, i, x, x.points[i - 1], scratch);
      if (cur < br.value - cfg.tol_eq) return false;
    }
  }
  return true;
}

}  // namespace gnep
