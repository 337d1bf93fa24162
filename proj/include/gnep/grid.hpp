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

// Deterministic search utilities: coarse-to-fine grid maximization over a
// box, and Halton low-discrepancy sequences for admissible-set sampling.
// Everything here is pure; identical inputs give identical outputs.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "gnep/config.hpp"

namespace gnep {

// Radical-inverse of index in the given base; the classic Halton coordinate.
inline double halton(unsigned long long index, int base) {
  double f = 1.0;
  double r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

// Base for a Halton axis. Axes beyond the prime table reuse it cyclically;
// sampled spaces here are desk-scale.
inline int halton_base(int axis) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23,
                               29, 31, 37, 41, 43, 47, 53, 59, 61};
  return primes[axis % (sizeof(primes) / sizeof(primes[0]))];
}

struct GridSearchResult {
  double value = -std::numeric_limits<double>::infinity();
  // First point seen that attains value.
  std::vector<double> best_point;
  // Within tol_opt of value, deduplicated at tol_dedup, lexicographic,
  // capped at cfg.max_reply_points.
  std::vector<std::vector<double>> maximizers;
  // The final refinement round improved the incumbent by at most tol_opt.
  bool converged = false;
  long evals = 0;
};

namespace detail {

inline bool lex_less_vec(const std::vector<double>& a,
                         const std::vector<double>& b) {
  for (std::size_t k = 0; k < a.size() && k < b.size(); ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return a.size() < b.size();
}

inline double linf_dist(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    d = std::max(d, std::fabs(a[k] - b[k]));
  }
  return d;
}

}  // namespace detail

// Maximizes f over [lo, hi] with a grid of cfg.grid_points per axis followed
// by cfg.refine_rounds rounds of windows shrunk by cfg.refine_shrink around
// the incumbents. Injected points are evaluated first and exactly (they are
// never snapped to the grid), so the result value is >= f at any injected
// point inside the box.
template <class F>
GridSearchResult grid_maximize(const std::vector<double>& lo,
                               const std::vector<double>& hi, F&& f,
                               const Config& cfg,
                               const std::vector<std::vector<double>>&
                                   injected = {}) {
  const int d = static_cast<int>(lo.size());
  const int grid = std::max(2, cfg.grid_points);
  constexpr int kMaxCenters = 8;

  GridSearchResult res;
  std::vector<std::pair<double, std::vector<double>>> pool;

  auto compact = [&]() {
    std::erase_if(pool, [&](const auto& e) {
      return e.first < res.value - cfg.tol_opt;
    });
  };
  auto consider = [&](const std::vector<double>& p) {
    double v = f(p);
    ++res.evals;
    if (v > res.value) {
      res.value = v;
      res.best_point = p;
    }
    if (v >= res.value - cfg.tol_opt) {
      pool.emplace_back(v, p);
      if (pool.size() > 4096) compact();
    }
  };

  for (const auto& p : injected) {
    if (static_cast<int>(p.size()) != d) continue;
    bool inside = true;
    for (int k = 0; k < d; ++k) {
      if (p[k] < lo[k] - 1e-12 || p[k] > hi[k] + 1e-12) inside = false;
    }
    if (inside) consider(p);
  }

  // Evaluates the full grid over [wlo, whi]. Window endpoints are produced
  // exactly, so maxima on a slice boundary are hit without rounding.
  auto sweep = [&](const std::vector<double>& wlo,
                   const std::vector<double>& whi) {
    std::vector<int> counts(d);
    long total = 1;
    for (int k = 0; k < d; ++k) {
      counts[k] = whi[k] > wlo[k] ? grid : 1;
      total *= counts[k];
    }
    std::vector<int> ix(d, 0);
    std::vector<double> p(d);
    for (long n = 0; n < total; ++n) {
      for (int k = 0; k < d; ++k) {
        if (counts[k] == 1) {
          p[k] = wlo[k];
        } else if (ix[k] == 0) {
          p[k] = wlo[k];
        } else if (ix[k] == counts[k] - 1) {
          p[k] = whi[k];
        } else {
          p[k] = wlo[k] + (whi[k] - wlo[k]) * ix[k] / (counts[k] - 1);
        }
      }
      consider(p);
      for (int k = d - 1; k >= 0; --k) {
        if (++ix[k] < counts[k]) break;
        ix[k] = 0;
      }
    }
  };

  sweep(lo, hi);

  double before_last = res.value;
  for (int r = 1; r <= cfg.refine_rounds; ++r) {
    before_last = res.value;
    compact();
    auto ranked = pool;
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return detail::lex_less_vec(a.second, b.second);
    });
    std::vector<std::vector<double>> centers;
    for (const auto& [v, p] : ranked) {
      bool dup = false;
      for (const auto& c : centers) {
        if (detail::linf_dist(c, p) <= cfg.tol_dedup) dup = true;
      }
      if (!dup) centers.push_back(p);
      if (static_cast<int>(centers.size()) >= kMaxCenters) break;
    }
    double scale = std::pow(cfg.refine_shrink, r);
    for (const auto& c : centers) {
      std::vector<double> wlo(d), whi(d);
      for (int k = 0; k < d; ++k) {
        double hw = (hi[k] - lo[k]) / (2.0 * scale);
        wlo[k] = std::max(lo[k], c[k] - hw);
        whi[k] = std::min(hi[k], c[k] + hw);
      }
      sweep(wlo, whi);
    }
  }
  res.converged = cfg.refine_rounds > 0 && res.value - before_last <= cfg.tol_opt;

  compact();
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    return detail::lex_less_vec(a.second, b.second);
  });
  for (const auto& [v, p] : pool) {
    bool dup = false;
    for (const auto& kept : res.maximizers) {
      if (detail::linf_dist(kept, p) <= cfg.tol_dedup) dup = true;
    }
    if (!dup) res.maximizers.push_back(p);
    if (static_cast<int>(res.maximizers.size()) >= cfg.max_reply_points) break;
  }
  return res;
}

}  // namespace gnep
