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

// The aggregated-deviation function and its two marginal forms.
//
//   psi(x, y) = sum_i ( theta_i(x, y_i) - theta_i(x, x_i) )
//
// big_v(x) maximizes psi(x, .) over the product slice X(x) = prod X_i(x);
// this decomposes into per-player maximizations. Under own-independent
// constraints, big_v(x) = 0 characterizes equilibria among feasible fixed
// points. tilde_v(x) maximizes psi(x, .) over the shared admissible set C
// of a Shared-constraint economy; it is NOT a product and is searched
// jointly. tilde_v(x) = 0 implies equilibrium; the converse fails, so a
// positive tilde value never refutes.

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gnep/config.hpp"
#include "gnep/economy.hpp"
#include "gnep/errors.hpp"
#include "gnep/grid.hpp"
#include "gnep/reply.hpp"

namespace gnep {

struct NIValue {
  double psi = 0.0;
  // theta_i(x, y_i) - theta_i(x, x_i), player order; psi is their sum in
  // exactly this order.
  std::vector<double> terms;
};

inline NIValue nikaido_isoda(const Economy& econ, const GlobalDecision& x,
                             const GlobalDecision& y) {
  NIValue out;
  Binding scratch = make_binding(econ, x);
  for (int i = 1; i <= econ.players(); ++i) {
    double dev = payoff_value(econ, i, x, y.points[i - 1], scratch);
    double cur = payoff_value(econ, i, x, x.points[i - 1], scratch);
    out.terms.push_back(dev - cur);
  }
  for (double t : out.terms) out.psi += t;
  return out;
}

inline double psi(const Economy& econ, const GlobalDecision& x,
                  const GlobalDecision& y) {
  return nikaido_isoda(econ, x, y).psi;
}

// ---- V over the product slice ---------------------------------------------

struct VResult {
  double value = 0.0;
  // Joint deviation attaining value: psi(x, maximizer) == value exactly.
  GlobalDecision maximizer;
  // Per-player supremum of theta_i(x, y) - theta_i(x, x_i).
  std::vector<double> terms;
  bool exact = false;
  bool converged = false;
};

// sup{ psi(x,y) : y in X(x) } by per-player decomposition: the sum splits
// over the product, so each player's term is maximized independently.
inline VResult big_v(const Economy& econ, const GlobalDecision& x,
                     const Config& cfg = {}) {
  VResult out;
  out.exact = econ.all_finite();
  out.converged = true;
  Binding scratch = make_binding(econ, x);
  for (int i = 1; i <= econ.players(); ++i) {
    BestReplySet br = best_reply(econ, i, x, cfg);
    double cur = payoff_value(econ, i, x, x.points[i - 1], scratch);
    out.terms.push_back(br.value - cur);
    out.maximizer.points.push_back(br.best);
    out.converged = out.converged && (br.exact || br.converged);
  }
  for (double t : out.terms) out.value += t;
  return out;
}

// ---- R over the product slice ---------------------------------------------

struct RSetFactor {
  int player = 0;
  // sup of psi's player term over X_i(x)
  double term_value = 0.0;
  std::vector<int> labels;
  std::vector<std::vector<double>> points;
  bool exact = false;
};

// Factored argmax of psi(x, .) over X(x); the product is never expanded.
struct RSet {
  double value = 0.0;  // big_v(x)
  std::vector<RSetFactor> factors;
};

// Finite slices: exact per-term argmax. Box slices: representatives within
// max(tol, cfg.tol_opt) of the per-player term supremum.
inline RSet r_set(const Economy& econ, const GlobalDecision& x,
                  double tol = 0.0, const Config& cfg = {}) {
  RSet out;
  Binding scratch = make_binding(econ, x);
  for (int i = 1; i <= econ.players(); ++i) {
    FeasibleSlice slice = feasible_slice(econ, i, x, cfg);
    if (slice.is_empty()) {
      throw EmptySliceError(i, "player has no admissible decision");
    }
    RSetFactor factor;
    factor.player = i;
    double cur = payoff_value(econ, i, x, x.points[i - 1], scratch);
    if (slice.is_finite()) {
      factor.exact = true;
      std::vector<double> terms;
      double best = -std::numeric_limits<double>::infinity();
      for (int l : slice.finite().labels) {
        double t =
            payoff_value(econ, i, x, point_from_label(econ, i, l), scratch) -
            cur;
        terms.push_back(t);
        best = std::max(best, t);
      }
      for (std::size_t k = 0; k < terms.size(); ++k) {
        if (terms[k] == best) {
          factor.labels.push_back(slice.finite().labels[k]);
        }
      }
      factor.term_value = best;
    } else {
      Config wide = cfg;
      wide.tol_opt = std::max(tol, cfg.tol_opt);
      auto term = [&](const std::vector<double>& t) {
        DecisionPoint y{-1, t};
        return payoff_value(econ, i, x, y, scratch) - cur;
      };
      GridSearchResult gr =
          detail::maximize_over_slice(econ, i, x, slice.box(), term, wide);
      if (gr.best_point.empty() || !std::isfinite(gr.value)) {
        throw EmptySliceError(i, "player has no admissible decision");
      }
      factor.term_value = gr.value;
      factor.points = std::move(gr.maximizers);
    }
    out.value += factor.term_value;
    out.factors.push_back(std::move(factor));
  }
  return out;
}

// x in R(x): every x_i attains its factor's supremum (exact membership on
// finite slices; within tol on box slices).
inline bool in_r_set(const Economy& econ, const GlobalDecision& x,
                     double tol = 0.0, const Config& cfg = {}) {
  RSet rs = r_set(econ, x, tol, cfg);
  for (int i = 1; i <= econ.players(); ++i) {
    const RSetFactor& f = rs.factors[i - 1];
    if (f.exact) {
      bool member = false;
      for (int l : f.labels) {
        if (l == x.points[i - 1].label) member = true;
      }
      if (!member) return false;
    } else {
      // the own term at x_i is 0 by construction
      if (0.0 < f.term_value - std::max(tol, cfg.tol_eq)) return false;
    }
  }
  return true;
}

// ---- admissible form -------------------------------------------------------

inline bool admissible_form(const Economy& econ) {
  return std::holds_alternative<SharedConstraint>(econ.constraint());
}

// Rebuilds an Unconstrained economy as Shared-with-no-inequalities, making
// C = E explicit. Bound-type constraints carry no shared admissible set.
inline Economy as_admissible_form(const Economy& econ) {
  if (admissible_form(econ)) return econ;
  if (std::holds_alternative<BoundConstraints>(econ.constraint())) {
    throw UnsupportedError(
        "bound-type constraints do not define a shared admissible set");
  }
  std::vector<DecisionSpace> spaces;
  std::vector<Payoff> payoffs;
  for (int i = 1; i <= econ.players(); ++i) {
    spaces.push_back(econ.space(i));
    payoffs.push_back(econ.payoff(i));
  }
  return Economy(std::move(spaces), SharedConstraint{}, std::move(payoffs));
}

// ---- tilde forms over the shared admissible set ---------------------------

struct TildeResult {
  double value = 0.0;
  GlobalDecision maximizer;
  bool exact = false;
  bool converged = false;
  long evals = 0;
};

namespace detail {

// Snaps candidate coordinates into per-player slices: box coordinates are
// clamped sequentially; finite labels outside their slice fall to the first
// admissible label. Returns false when some slice is empty.
inline bool clamp_into_slices(const Economy& econ, GlobalDecision& y,
                              const Config& cfg) {
  for (int i = 1; i <= econ.players(); ++i) {
    FeasibleSlice s = feasible_slice(econ, i, y, cfg);
    if (s.is_empty()) return false;
    DecisionPoint& p = y.points[i - 1];
    if (s.is_finite()) {
      bool ok = false;
      for (int l : s.finite().labels) {
        if (l == p.label) ok = true;
      }
      if (!ok) p = point_from_label(econ, i, s.finite().labels.front());
    } else {
      const SubBox& b = s.box();
      for (int k = 0; k < econ.dim(i); ++k) {
        p.coords[k] = std::min(std::max(p.coords[k], b.lower[k]), b.upper[k]);
      }
    }
  }
  return true;
}

template <class Consider>
void tilde_candidates_from(const Economy& econ, const GlobalDecision& raw,
                           const Config& cfg, Consider&& consider) {
  GlobalDecision clamped = raw;
  if (!clamp_into_slices(econ, clamped, cfg)) return;
  consider(clamped);
  // Boundary variants: suprema of coupled problems often sit where the
  // shared constraint is active, which no interior sample hits exactly.
  for (int i = 1; i <= econ.players(); ++i) {
    if (econ.finite(i)) continue;
    FeasibleSlice s = feasible_slice(econ, i, clamped, cfg);
    if (s.is_empty() || s.is_finite()) continue;
    GlobalDecision up = clamped;
    up.points[i - 1].coords = s.box().upper;
    consider(up);
    GlobalDecision down = clamped;
    down.points[i - 1].coords = s.box().lower;
    consider(down);
  }
}

}  // namespace detail

// sup{ psi(x,y) : y in C } for a Shared-constraint economy. All-finite:
// exact enumeration of C. Otherwise: low-discrepancy sampling of the
// product space with boundary snapping, feasibility re-check of every
// candidate, and window refinement around the incumbent; x is always a
// candidate, so the value is at least psi(x,x) = 0.
inline TildeResult tilde_v(const Economy& econ, const GlobalDecision& x,
                           const Config& cfg = {}) {
  if (!admissible_form(econ)) {
    throw UnsupportedError(
        "economy is not in admissible form (Shared constraint required)");
  }
  if (!is_feasible(econ, x, cfg)) {
    throw ModelError("x must lie in the shared admissible set");
  }

  TildeResult out;
  out.maximizer = x;  // psi(x,x) = 0

  if (econ.all_finite()) {
    out.exact = true;
    out.converged = true;
    double best = -std::numeric_limits<double>::infinity();
    for (long f = 0; f < econ.profile_count(); ++f) {
      GlobalDecision y = decision_from_flat(econ, f);
      if (!is_feasible(econ, y, cfg)) continue;
      double v = psi(econ, x, y);
      ++out.evals;
      if (v > best) {
        best = v;
        out.maximizer = y;
      }
    }
    out.value = best;
    return out;
  }

  double best = 0.0;
  auto consider = [&](const GlobalDecision& y) {
    if (!is_feasible(econ, y, cfg)) return;
    double v = psi(econ, x, y);
    ++out.evals;
    if (v > best) {
      best = v;
      out.maximizer = y;
    }
  };
  detail::tilde_candidates_from(econ, x, cfg, consider);

  int box_players = 0;
  int axes = 0;
  for (int i = 1; i <= econ.players(); ++i) {
    if (econ.finite(i)) {
      axes += 1;
    } else {
      ++box_players;
      axes += econ.dim(i);
    }
  }
  const int variants = 1 + 2 * box_players;
  const int rounds = std::max(1, cfg.sample_rounds);
  const long raws = std::max<long>(
      1, cfg.tilde_budget / (static_cast<long>(rounds) * variants));
  const unsigned long long offset = 4000 + cfg.seed * 6961ULL;

  unsigned long long n = 0;
  for (int r = 0; r < rounds; ++r) {
    const GlobalDecision center = out.maximizer;
    const double shrink = std::pow(cfg.sample_shrink, r);
    double before = best;
    for (long s = 0; s < raws; ++s, ++n) {
      GlobalDecision raw;
      int axis = 0;
      for (int i = 1; i <= econ.players(); ++i) {
        if (econ.finite(i)) {
          double u = halton(offset + n, halton_base(axis++));
          int l = std::min(econ.label_count(i) - 1,
                           static_cast<int>(u * econ.label_count(i)));
          raw.points.push_back(point_from_label(econ, i, l));
        } else {
          const BoxSpace& b = econ.box_space(i);
          DecisionPoint p;
          p.label = -1;
          for (int k = 0; k < econ.dim(i); ++k) {
            double u = halton(offset + n, halton_base(axis++));
            double half = (b.upper[k] - b.lower[k]) / (2.0 * shrink);
            double c = center.points[i - 1].coords[k];
            double lo = std::max(b.lower[k], c - half);
            double hi = std::min(b.upper[k], c + half);
            p.coords.push_back(lo + u * (hi - lo));
          }
          raw.points.push_back(std::move(p));
        }
      }
      detail::tilde_candidates_from(econ, raw, cfg, consider);
    }
    if (r == rounds - 1) out.converged = best - before <= cfg.tol_opt;
  }
  out.value = best;
  return out;
}

// Representatives of { y in C : psi(x,y) >= tilde_v(x) - tol }, in
// lexicographic order, deduplicated at tol_dedup. All-finite: exact for
// tol = 0.
inline std::vector<GlobalDecision> tilde_r_set(const Economy& econ,
                                               const GlobalDecision& x,
                                               double tol = 0.0,
                                               const Config& cfg = {}) {
  TildeResult tv = tilde_v(econ, x, cfg);
  std::vector<GlobalDecision> out;
  if (econ.all_finite()) {
    for (long f = 0; f < econ.profile_count(); ++f) {
      GlobalDecision y = decision_from_flat(econ, f);
      if (!is_feasible(econ, y, cfg)) continue;
      if (psi(econ, x, y) >= tv.value - tol) out.push_back(y);
    }
    return out;
  }
  // Re-scan around the found maximizer: keep near-optimal candidates.
  double keep = tv.value - std::max(tol, cfg.tol_opt);
  auto consider = [&](const GlobalDecision& y) {
    if (!is_feasible(econ, y, cfg)) return;
    if (psi(econ, x, y) < keep) return;
    for (const GlobalDecision& have : out) {
      if (decision_distance(have, y) <= cfg.tol_dedup) return;
    }
    if (static_cast<int>(out.size()) < cfg.max_reply_points) out.push_back(y);
  };
  consider(tv.maximizer);
  const unsigned long long offset = 8000 + cfg.seed * 6961ULL;
  for (long s = 0; s < cfg.tilde_budget; ++s) {
    GlobalDecision raw;
    int axis = 0;
    for (int i = 1; i <= econ.players(); ++i) {
      if (econ.finite(i)) {
        double u = halton(offset + s, halton_base(axis++));
        int l = std::min(econ.label_count(i) - 1,
                         static_cast<int>(u * econ.label_count(i)));
        raw.points.push_back(point_from_label(econ, i, l));
      } else {
        const BoxSpace& b = econ.box_space(i);
        DecisionPoint p;
        p.label = -1;
        for (int k = 0; k < econ.dim(i); ++k) {
          double u = halton(offset + s, halton_base(axis++));
          double c = tv.maximizer.points[i - 1].coords[k];
          double half = (b.upper[k] - b.lower[k]) / (2.0 * cfg.sample_shrink);
          double lo = std::max(b.lower[k], c - half);
          double hi = std::min(b.upper[k], c + half);
          p.coords.push_back(lo + u * (hi - lo));
        }
        raw.points.push_back(std::move(p));
      }
    }
    detail::tilde_candidates_from(econ, raw, cfg, consider);
  }
  std::sort(out.begin(), out.end(),
            [&](const GlobalDecision& a, const GlobalDecision& b) {
              return decision_less(econ, a, b);
            });
  return out;
}

// x in tilde R(x) iff psi(x,x) = 0 reaches the supremum over C, i.e.
// tilde_v(x) <= tol.
inline bool in_tilde_r_set(const Economy& econ, const GlobalDecision& x,
                           double tol = 0.0, const Config& cfg = {}) {
  return tilde_v(econ, x, cfg).value <= tol;
}

// ---- certificates ----------------------------------------------------------

enum class CertMethod { v, tilde_v };
enum class CertConclusion { equilibrium_confirmed, not_equilibrium,
                            inconclusive };

inline const char* to_cstring(CertMethod m) {
  return m == CertMethod::v ? "v" : "tilde-v";
}

inline const char* to_cstring(CertConclusion c) {
  switch (c) {
    case CertConclusion::equilibrium_confirmed: return "equilibrium-confirmed";
    case CertConclusion::not_equilibrium: return "not-equilibrium";
    default: return "inconclusive";
  }
}

struct Certificate {
  CertMethod method = CertMethod::v;
  bool applicable = false;
  double value = 0.0;
  GlobalDecision maximizer;
  bool exact = false;
  bool converged = false;
  CertConclusion conclusion = CertConclusion::inconclusive;
  double tol_cert = 0.0;
  std::string note;
};

// Certificate semantics:
//   method v        applicable iff every player's constraint map ignores
//                   its own components; value <= tol_cert confirms an
//                   equilibrium; value > tol_cert refutes only when exact
//                   (all-finite).
//   method tilde_v  applicable iff the economy carries a Shared constraint
//                   and x lies in C; value <= tol_cert confirms; a positive
//                   value is one-directional and never refutes.
inline Certificate certify(const Economy& econ, const GlobalDecision& x,
                           CertMethod method, const Config& cfg = {}) {
  Certificate cert;
  cert.method = method;
  cert.tol_cert = cfg.tol_cert;

  if (!is_feasible(econ, x, cfg)) {
    cert.applicable = false;
    cert.note = "x is not feasible";
    return cert;
  }

  if (method == CertMethod::v) {
    cert.applicable = own_independent(econ);
    VResult v = big_v(econ, x, cfg);
    cert.value = v.value;
    cert.maximizer = std::move(v.maximizer);
    cert.exact = v.exact;
    cert.converged = v.converged;
    if (!cert.applicable) {
      cert.note =
          "constraint map depends on own components; V = 0 does not "
          "characterize equilibria here";
      return cert;
    }
    if (cert.value <= cfg.tol_cert) {
      cert.conclusion = CertConclusion::equilibrium_confirmed;
    } else if (cert.exact) {
      cert.conclusion = CertConclusion::not_equilibrium;
    } else {
      cert.note = "budgeted V above tolerance is not a refutation";
    }
    return cert;
  }

  if (!admissible_form(econ)) {
    cert.applicable = false;
    cert.note = "economy is not in admissible form";
    return cert;
  }
  cert.applicable = true;
  TildeResult tv = tilde_v(econ, x, cfg);
  cert.value = tv.value;
  cert.maximizer = std::move(tv.maximizer);
  cert.exact = tv.exact;
  cert.converged = tv.converged;
  if (cert.value <= cfg.tol_cert) {
    cert.conclusion = CertConclusion::equilibrium_confirmed;
  } else {
    cert.note = "positive tilde value is one-directional; not a refutation";
  }
  return cert;
}

}  // namespace gnep
