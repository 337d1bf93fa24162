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

#pragma once

namespace gnep {

// Shared numeric configuration. Defaults are the documented contract; every
// search, tolerance and sampling knob routes through here so runs are
// reproducible from a config snapshot plus a seed.
struct Config {
  // Feasibility slack for inequality constraints on continuous spaces.
  // Finite spaces always compare exactly.
  double tol_feas = 1e-9;
  // Improvement threshold below which a deviation does not refute equilibrium.
  double tol_eq = 1e-6;
  // Optimality gap for membership in budgeted argmax sets.
  double tol_opt = 1e-8;
  // Two points closer than this (L-inf) are the same representative.
  double tol_dedup = 1e-6;
  // Gap-value threshold for certificates.
  double tol_cert = 1e-6;

  // Grid maximizer over box slices: points per axis, refinement rounds,
  // per-round window shrink factor.
  int grid_points = 33;
  int refine_rounds = 4;
  double refine_shrink = 4.0;
  // Cap on representatives kept for box argmax sets. Flat payoffs would
  // otherwise return entire grids.
  int max_reply_points = 32;

  // Axis resolution when a slice must be enclosed from feasibility samples
  // (non-affine shared inequalities).
  int slice_grid = 65;

  // Sampled search over the admissible set: candidate budget, local
  // refinement rounds, per-round window shrink.
  long budget = 10000;
  int sample_rounds = 3;
  double sample_shrink = 50.0;
  // Inner candidate budgets for sup-of-psi searches on continuous spaces:
  // full accuracy, and the cheap pass used while scanning many points.
  long tilde_budget = 4096;
  long tilde_budget_coarse = 256;

  // Best-response iteration: sweep limit, cycle memory window, and the
  // trace distance under which two iterates count as the same point.
  int max_iter = 100;
  int cycle_window = 16;
  double cycle_tol = 1e-9;

  // Seed for every deterministic sampling stream.
  unsigned long seed = 1;

  // Quasi-concavity probe: 1-D argmax grid resolution.
  int contiguity_grid = 257;
};

}  // namespace gnep
