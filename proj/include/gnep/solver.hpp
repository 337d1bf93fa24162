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

#ifndef GNEP_SOLVER_HPP_
#define GNEP_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gnep/economy.hpp"
#include "gnep/niso.hpp"
#include "gnep/reply.hpp"

namespace gnep {

enum class SolveStatus { found, none_exist, budget_exhausted, diverged };

inline const char* to_cstring(SolveStatus s) {
  switch (s) {
    case SolveStatus::found:
      return "found";
    case SolveStatus::none_exist:
      return "none-exist";
    case SolveStatus::budget_exhausted:
      return "budget-exhausted";
    default:
      return "diverged";
  }
}

// One solver-produced equilibrium candidate; `report` is the unconditional
// re-verification, `certificate` the marginal-value evidence.
struct SolvedPoint {
  GlobalDecision x;
  EquilibriumReport report;
  Certificate certificate;
  double value = 0.0;
};

struct TraceEntry {
  GlobalDecision x;
  double value = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::budget_exhausted;
  std::vector<SolvedPoint> equilibria;
  std::vector<TraceEntry> trace;
  long budget_consumed = 0;
  std::string note;
};

namespace detail {

// Certificate method a solver attaches to results it has already verified:
// exact V when the four-way equivalence applies, one-directional tilde
// otherwise, V (possibly inapplicable) as the fallback.
inline CertMethod default_cert_method(const Economy& econ) {
  if (own_independent(econ)) return CertMethod::v;
  if (admissible_form(econ)) return CertMethod::tilde_v;
  return CertMethod::v;
}

inline SolvedPoint make_solved_point(const Economy& econ,
                                     const GlobalDecision& x,
                                     EquilibriumReport report,
                                     const Config& cfg) {
  SolvedPoint sp;
  sp.x = x;
  sp.report = std::move(report);
  sp.certificate = certify(econ, x, default_cert_method(econ), cfg);
  sp.value = sp.certificate.value;
  return sp;
}

}  // namespace detail

// Exhaustive scan of every global profile in lexicographic label order.
// The only operation entitled to report that no equilibrium exists.
inline SolveResult enumerate_equilibria(const Economy& econ,
                                        const Config& cfg = {}) {
  if (!econ.all_finite()) {
    throw UnsupportedError(
        "enumerate_equilibria requires all decision spaces to be finite");
  }
  SolveResult out;
  for (long f = 0; f < econ.profile_count(); ++f) {
    GlobalDecision x = decision_from_flat(econ, f);
    ++out.budget_consumed;
    if (!is_feasible(econ, x, cfg)) continue;
    EquilibriumReport report = is_nash_equilibrium(econ, x, cfg);
    if (report.verdict != Verdict::equilibrium) continue;
    out.equilibria.push_back(
        detail::make_solved_point(econ, x, std::move(report), cfg));
  }
  out.status =
      out.equilibria.empty() ? SolveStatus::none_exist : SolveStatus::found;
  return out;
}

// Gauss-Seidel sweeps: players updated in index order, each replaced by the
// first element of its best-reply set.  Deterministic given (econ, x0).
inline SolveResult best_response_iteration(const Economy& econ,
                                           const GlobalDecision& x0,
                                           const Config& cfg = {}) {
  if (!in_space(econ, x0)) {
    throw ModelError("x0 must lie in the ambient product space");
  }
  SolveResult out;
  GlobalDecision cur = x0;

  std::unordered_set<long> visited;
  if (econ.all_finite()) visited.insert(flat_index(econ, cur));
  std::deque<GlobalDecision> window;

  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    GlobalDecision prev = cur;
    for (int i = 1; i <= econ.players(); ++i) {
      BestReplySet br = best_reply(econ, i, cur, cfg);
      if (econ.finite(i)) {
        cur.points[i - 1] = point_from_label(econ, i, br.labels.front());
      } else {
        cur.points[i - 1] = br.best;
      }
    }
    ++out.budget_consumed;
    out.trace.push_back({cur, big_v(econ, cur, cfg).value});

    bool unchanged;
    if (econ.all_finite()) {
      unchanged = flat_index(econ, prev) == flat_index(econ, cur);
    } else {
      unchanged = decision_distance(prev, cur) <= cfg.tol_dedup;
    }
    if (unchanged) {
      EquilibriumReport report = is_nash_equilibrium(econ, cur, cfg);
      if (report.verdict == Verdict::equilibrium) {
        out.equilibria.push_back(
            detail::make_solved_point(econ, cur, std::move(report), cfg));
        out.status = SolveStatus::found;
      } else {
        out.status = SolveStatus::budget_exhausted;
        out.note = "iteration reached a stationary point that did not verify";
      }
      return out;
    }

    if (econ.all_finite()) {
      if (!visited.insert(flat_index(econ, cur)).second) {
        out.status = SolveStatus::diverged;
        out.note = "best-response cycle: profile repeated";
        return out;
      }
    } else {
      for (const GlobalDecision& w : window) {
        if (decision_distance(w, cur) <= cfg.cycle_tol) {
          out.status = SolveStatus::diverged;
          out.note = "best-response cycle: iterate revisited within tolerance";
          return out;
        }
      }
      window.push_back(cur);
      if (static_cast<int>(window.size()) > cfg.cycle_window) {
        window.pop_front();
      }
    }
  }
  out.status = SolveStatus::budget_exhausted;
  return out;
}

namespace detail {

struct Incumbent {
  double value = std::numeric_limits<double>::infinity();
  GlobalDecision x;
};

// Keeps the `cap` best candidates, deduplicated by decision distance; a
// nearby better candidate replaces rather than accumulates.
inline void pool_insert(std::vector<Incumbent>& pool, double value,
                        const GlobalDecision& x, std::size_t cap,
                        double tol_dedup) {
  for (Incumbent& inc : pool) {
    if (decision_distance(inc.x, x) <= tol_dedup) {
      if (value < inc.value) {
        inc.value = value;
        inc.x = x;
      }
      return;
    }
  }
  pool.push_back({value, x});
  std::sort(pool.begin(), pool.end(),
            [](const Incumbent& a, const Incumbent& b) {
              return a.value < b.value;
            });
  if (pool.size() > cap) pool.resize(cap);
}

// Draws the n-th low-discrepancy candidate in the ambient product space.
inline GlobalDecision ambient_halton_point(const Economy& econ,
                                           unsigned long long index) {
  GlobalDecision y;
  int axis = 0;
  for (int i = 1; i <= econ.players(); ++i) {
    if (econ.finite(i)) {
      double u = halton(index, halton_base(axis++));
      int m = econ.label_count(i);
      int l = std::min(m - 1, static_cast<int>(u * m));
      y.points.push_back(point_from_label(econ, i, l));
    } else {
      const BoxSpace& box = econ.box_space(i);
      DecisionPoint p;
      for (std::size_t c = 0; c < box.lower.size(); ++c) {
        double u = halton(index, halton_base(axis++));
        p.coords.push_back(box.lower[c] + u * (box.upper[c] - box.lower[c]));
      }
      y.points.push_back(std::move(p));
    }
  }
  return y;
}

// As above but restricted to a window around `center` whose half-width per
// coordinate is range / (2 * shrink^round).
inline GlobalDecision windowed_halton_point(const Economy& econ,
                                            const GlobalDecision& center,
                                            unsigned long long index,
                                            double scale) {
  GlobalDecision y;
  int axis = 0;
  for (int i = 1; i <= econ.players(); ++i) {
    if (econ.finite(i)) {
      double u = halton(index, halton_base(axis++));
      int m = econ.label_count(i);
      int l = std::min(m - 1, static_cast<int>(u * m));
      y.points.push_back(point_from_label(econ, i, l));
    } else {
      const BoxSpace& box = econ.box_space(i);
      DecisionPoint p;
      for (std::size_t c = 0; c < box.lower.size(); ++c) {
        double u = halton(index, halton_base(axis++));
        double half = (box.upper[c] - box.lower[c]) * 0.5 * scale;
        double ctr = center.points[i - 1].coords[c];
        double lo = std::max(box.lower[c], ctr - half);
        double hi = std::min(box.upper[c], ctr + half);
        p.coords.push_back(lo + u * (hi - lo));
      }
      y.points.push_back(std::move(p));
    }
  }
  return y;
}

}  // namespace detail

// Minimizes the chosen marginal value over the feasible fixed-point set.
// All-finite economies are scanned exhaustively; otherwise deterministic
// low-discrepancy sampling with boundary snapping and shrinking refinement
// windows around the best candidates.  Every returned equilibrium is
// re-verified; a small value alone never suffices.
inline SolveResult minimize_v(const Economy& econ, CertMethod method,
                              const Config& cfg = {}) {
  if (method == CertMethod::v && !own_independent(econ)) {
    throw UnsupportedError(
        "method v requires payoffs independent of the player's own current "
        "decision");
  }
  if (method == CertMethod::tilde_v && !admissible_form(econ)) {
    throw UnsupportedError(
        "method tilde-v requires a shared admissible set (Shared constraint)");
  }

  SolveResult out;
  double best_value = std::numeric_limits<double>::infinity();
  GlobalDecision best_x;
  bool have_best = false;

  auto note_best = [&](double value, const GlobalDecision& x) {
    if (value < best_value) {
      best_value = value;
      best_x = x;
      have_best = true;
      out.trace.push_back({x, value});
    }
  };
  auto verify_and_push = [&](const GlobalDecision& x) {
    Certificate cert = certify(econ, x, method, cfg);
    if (!(cert.applicable && cert.value <= cfg.tol_cert)) return;
    EquilibriumReport report = is_nash_equilibrium(econ, x, cfg);
    if (report.verdict != Verdict::equilibrium) return;
    SolvedPoint sp;
    sp.x = x;
    sp.report = std::move(report);
    sp.certificate = std::move(cert);
    sp.value = sp.certificate.value;
    out.equilibria.push_back(std::move(sp));
  };

  if (econ.all_finite()) {
    for (long f = 0; f < econ.profile_count(); ++f) {
      GlobalDecision x = decision_from_flat(econ, f);
      if (!is_feasible(econ, x, cfg)) continue;
      ++out.budget_consumed;
      double value = method == CertMethod::v ? big_v(econ, x, cfg).value
                                             : tilde_v(econ, x, cfg).value;
      note_best(value, x);
      if (value <= cfg.tol_cert) verify_and_push(x);
    }
  } else {
    // coarse ranking budget per candidate; accuracy is restored by the
    // certify pass on the surviving pool
    Config coarse = cfg;
    coarse.tilde_budget = cfg.tilde_budget_coarse;
    auto evaluate = [&](const GlobalDecision& x) {
      return method == CertMethod::v ? big_v(econ, x, coarse).value
                                     : tilde_v(econ, x, coarse).value;
    };

    const std::size_t pool_cap = 8;
    std::vector<detail::Incumbent> pool;
    unsigned long long n =
        12000 + static_cast<unsigned long long>(cfg.seed) * 6961ULL;
    long global_budget = std::max(1L, cfg.budget / 2);
    long round_budget = std::max(1L, cfg.budget / 8);

    auto evaluate_candidate = [&](const GlobalDecision& cand) {
      if (out.budget_consumed >= cfg.budget) return;
      if (!is_feasible(econ, cand, cfg)) return;
      ++out.budget_consumed;
      double value = evaluate(cand);
      note_best(value, cand);
      detail::pool_insert(pool, value, cand, pool_cap, cfg.tol_dedup);
    };
    // each raw draw yields its clamped image plus slice-boundary variants,
    // so constraint-active candidates are sampled exactly
    auto consider = [&](const GlobalDecision& raw) {
      detail::tilde_candidates_from(econ, raw, cfg, evaluate_candidate);
    };

    for (long k = 0; k < global_budget && out.budget_consumed < cfg.budget;
         ++k) {
      consider(detail::ambient_halton_point(econ, n++));
    }
    for (int round = 1; round <= cfg.sample_rounds; ++round) {
      std::vector<detail::Incumbent> centers = pool;
      if (centers.empty()) break;
      double scale = 1.0;
      for (int r = 0; r < round; ++r) scale /= cfg.sample_shrink;
      long per_center =
          std::max(1L, round_budget / static_cast<long>(centers.size()));
      for (const detail::Incumbent& c : centers) {
        for (long k = 0;
             k < per_center && out.budget_consumed < cfg.budget; ++k) {
          consider(detail::windowed_halton_point(econ, c.x, n++, scale));
        }
      }
    }
    for (const detail::Incumbent& inc : pool) verify_and_push(inc.x);
  }

  std::sort(out.equilibria.begin(), out.equilibria.end(),
            [&](const SolvedPoint& a, const SolvedPoint& b) {
              return decision_less(econ, a.x, b.x);
            });
  std::vector<SolvedPoint> dedup;
  for (SolvedPoint& sp : out.equilibria) {
    bool dup = false;
    for (const SolvedPoint& kept : dedup) {
      if (decision_distance(kept.x, sp.x) <= cfg.tol_dedup) dup = true;
    }
    if (!dup && static_cast<int>(dedup.size()) < cfg.max_reply_points) {
      dedup.push_back(std::move(sp));
    }
  }
  out.equilibria = std::move(dedup);

  if (!out.equilibria.empty()) {
    out.status = SolveStatus::found;
  } else {
    out.status = SolveStatus::budget_exhausted;
    if (have_best) {
      out.note = "no value reached tol_cert; best candidate retained in trace";
      out.trace.push_back({best_x, best_value});
    } else {
      out.note = "no feasible candidate was found within the budget";
    }
  }
  return out;
}

// A violation witness: the sampled segment and the mixing weight at which the
// payoff dips below both endpoint values.  Re-checkable by direct evaluation.
struct QuasiConcavityViolation {
  DecisionPoint a;
  DecisionPoint b;
  double lambda = 0.0;
  double value = 0.0;
  double endpoint_min = 0.0;
};

struct QuasiConcavityReport {
  int player = 0;
  GlobalDecision anchor;
  long pairs_sampled = 0;
  long violations = 0;
  bool has_worst = false;
  QuasiConcavityViolation worst;
  bool one_dimensional = false;
  bool argmax_contiguous = true;
  long argmax_first = -1;
  long argmax_last = -1;
  long argmax_count = 0;
};

// Samples random segments in player i's admissible slice at x and tests the
// mixing inequality on a fixed lambda grid.  Sampling can only refute: a
// clean report means "no violation found", never a proof of quasi-concavity.
inline QuasiConcavityReport probe_quasiconcavity(const Economy& econ, int i,
                                                 const GlobalDecision& x,
                                                 long samples,
                                                 const Config& cfg = {}) {
  QuasiConcavityReport rep;
  rep.player = i;
  rep.anchor = x;

  Binding scratch = make_binding(econ, x);
  auto value_at = [&](const DecisionPoint& p) {
    return payoff_value(econ, i, x, p, scratch);
  };
  auto record = [&](const DecisionPoint& a, const DecisionPoint& b,
                    double lambda, const DecisionPoint& mid) {
    double va = value_at(a);
    double vb = value_at(b);
    double vm = value_at(mid);
    double lo = std::min(va, vb);
    if (vm < lo - cfg.tol_eq) {
      ++rep.violations;
      double deficit = lo - vm;
      if (!rep.has_worst || deficit > rep.worst.endpoint_min - rep.worst.value) {
        rep.has_worst = true;
        rep.worst = {a, b, lambda, vm, lo};
      }
    }
  };
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^
                      (static_cast<unsigned long long>(cfg.seed) * 2654435761ULL +
                       static_cast<unsigned long long>(i)));

  FeasibleSlice slice = feasible_slice(econ, i, x, cfg);
  if (slice.is_empty()) {
    throw EmptySliceError(i, "player has no admissible decision at the anchor");
  }

  if (!econ.finite(i)) {
    const SubBox& box = slice.box();
    std::size_t dims = box.lower.size();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&]() {
      DecisionPoint p;
      for (std::size_t c = 0; c < dims; ++c) {
        p.coords.push_back(box.lower[c] +
                           unit(rng) * (box.upper[c] - box.lower[c]));
      }
      return p;
    };
    for (long s = 0; s < samples; ++s) {
      DecisionPoint a = draw();
      DecisionPoint b = draw();
      ++rep.pairs_sampled;
      for (int k = 1; k <= 9; ++k) {
        double lambda = k / 10.0;
        DecisionPoint mid;
        for (std::size_t c = 0; c < dims; ++c) {
          mid.coords.push_back(lambda * a.coords[c] +
                               (1.0 - lambda) * b.coords[c]);
        }
        record(a, b, lambda, mid);
      }
    }
    if (dims == 1) {
      rep.one_dimensional = true;
      int n = cfg.contiguity_grid;
      double lo = box.lower[0];
      double hi = box.upper[0];
      std::vector<double> vals;
      vals.reserve(n);
      for (int j = 0; j < n; ++j) {
        double t = j == 0 ? lo
                   : j == n - 1
                       ? hi
                       : lo + (hi - lo) * static_cast<double>(j) / (n - 1);
        DecisionPoint p;
        p.coords.push_back(t);
        vals.push_back(value_at(p));
      }
      double vmax = *std::max_element(vals.begin(), vals.end());
      for (int j = 0; j < n; ++j) {
        if (vals[j] == vmax) {
          if (rep.argmax_first < 0) rep.argmax_first = j;
          rep.argmax_last = j;
          ++rep.argmax_count;
        }
      }
      rep.argmax_contiguous =
          rep.argmax_last - rep.argmax_first + 1 == rep.argmax_count;
    }
    return rep;
  }

  // finite slice: order the admissible points along a common line and test
  // the lattice shadow of the mixing inequality
  const std::vector<int>& labels = slice.finite().labels;
  if (labels.size() < 3) {
    throw UnsupportedError(
        "unsupported geometry: finite probing needs at least 3 admissible "
        "points");
  }
  std::vector<DecisionPoint> pts;
  for (int l : labels) pts.push_back(point_from_label(econ, i, l));
  std::size_t dims = pts[0].coords.size();
  std::vector<double> dir(dims, 0.0);
  for (std::size_t c = 0; c < dims; ++c) dir[c] = pts[1].coords[c] - pts[0].coords[c];
  for (const DecisionPoint& p : pts) {
    // collinearity: every offset from pts[0] must be parallel to dir
    for (std::size_t c = 0; c < dims; ++c) {
      for (std::size_t d = c + 1; d < dims; ++d) {
        double off_c = p.coords[c] - pts[0].coords[c];
        double off_d = p.coords[d] - pts[0].coords[d];
        if (std::fabs(off_c * dir[d] - off_d * dir[c]) > 1e-12) {
          throw UnsupportedError(
              "unsupported geometry: admissible points are not collinear");
        }
      }
    }
  }
  std::vector<std::size_t> order(pts.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double ta = 0.0, tb = 0.0;
    for (std::size_t c = 0; c < dims; ++c) {
      ta += (pts[a].coords[c] - pts[0].coords[c]) * dir[c];
      tb += (pts[b].coords[c] - pts[0].coords[c]) * dir[c];
    }
    return ta < tb;
  });

  std::uniform_int_distribution<std::size_t> pick(0, order.size() - 1);
  for (long s = 0; s < samples; ++s) {
    std::size_t ja = pick(rng);
    std::size_t jb = pick(rng);
    if (ja > jb) std::swap(ja, jb);
    if (jb - ja < 2) continue;
    ++rep.pairs_sampled;
    const DecisionPoint& a = pts[order[ja]];
    const DecisionPoint& b = pts[order[jb]];
    for (std::size_t jm = ja + 1; jm < jb; ++jm) {
      double lambda =
          static_cast<double>(jb - jm) / static_cast<double>(jb - ja);
      record(a, b, lambda, pts[order[jm]]);
    }
  }

  rep.one_dimensional = true;
  std::vector<double> vals;
  for (std::size_t k = 0; k < order.size(); ++k) {
    vals.push_back(value_at(pts[order[k]]));
  }
  double vmax = *std::max_element(vals.begin(), vals.end());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (vals[j] == vmax) {
      if (rep.argmax_first < 0) rep.argmax_first = static_cast<long>(j);
      rep.argmax_last = static_cast<long>(j);
      ++rep.argmax_count;
    }
  }
  rep.argmax_contiguous =
      rep.argmax_last - rep.argmax_first + 1 == rep.argmax_count;
  return rep;
}

}  // namespace gnep

#endif  // GNEP_SOLVER_HPP_
