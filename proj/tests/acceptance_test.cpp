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

// Release gate.  Each criterion prints exactly one [PASS]/[FAIL] line and
// checks the library against independent oracles computed inline: brute-force
// definition scans, closed-form arithmetic, and a 1025x1025 grid.  Always-on
// requirements; the binary exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gnep/corpus.hpp"
#include "gnep/economy_io.hpp"
#include "gnep/solver.hpp"
#include "test_support.hpp"

namespace {

using namespace gnep;

#define REQUIRE(cond, ...)                                           \
  do {                                                               \
    if (!(cond)) {                                                   \
      std::fprintf(stderr, "  requirement failed (%s:%d): ",         \
                   __FILE__, __LINE__);                              \
      std::fprintf(stderr, __VA_ARGS__);                             \
      std::fprintf(stderr, "\n");                                    \
      return false;                                                  \
    }                                                                \
  } while (0)

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Brute-force equilibrium check straight from the definition: feasible, and
// no player has an admissible deviation with strictly larger payoff.
bool definition_equilibrium(const Economy& econ, const GlobalDecision& x) {
  if (!is_feasible(econ, x)) return false;
  for (int i = 1; i <= econ.players(); ++i) {
    FeasibleSlice s = feasible_slice(econ, i, x);
    double cur = payoff_value(econ, i, x, x.points[i - 1]);
    for (int l : s.finite().labels) {
      if (payoff_value(econ, i, x, point_from_label(econ, i, l)) > cur) {
        return false;
      }
    }
  }
  return true;
}

// Criterion 1 — on random all-finite own-independent economies the four
// characterizations pick out exactly the same profiles: the definition, the
// best-reply fixed points, the R fixed points, and {x : V(x) = 0}.  Exact
// set equality, no tolerance.
bool c1_four_way_equivalence() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260822);
  long total_equilibria = 0;
  for (int inst = 0; inst < 100; ++inst) {
    testing::RandomEconomyOptions opt;
    opt.shared = (inst % 3) == 2;
    Economy econ = testing::random_finite_economy(rng, opt);
    REQUIRE(own_independent(econ), "instance %d not own-independent", inst);

    std::set<long> by_definition, by_phi, by_r, by_v_zero;
    for (long f = 0; f < econ.profile_count(); ++f) {
      GlobalDecision x = decision_from_flat(econ, f);
      if (!is_feasible(econ, x)) continue;
      bool empty = false;
      for (int i = 1; i <= econ.players(); ++i) {
        if (feasible_slice(econ, i, x).is_empty()) empty = true;
      }
      if (empty) continue;
      if (definition_equilibrium(econ, x)) by_definition.insert(f);
      if (is_phi_fixed_point(econ, x)) by_phi.insert(f);
      if (in_r_set(econ, x)) by_r.insert(f);
      if (big_v(econ, x).value == 0.0) by_v_zero.insert(f);
    }
    REQUIRE(by_definition == by_phi,
            "instance %d: definition set != best-reply fixed points", inst);
    REQUIRE(by_definition == by_r,
            "instance %d: definition set != R fixed points", inst);
    REQUIRE(by_definition == by_v_zero,
            "instance %d: definition set != {V = 0}", inst);
    total_equilibria += static_cast<long>(by_definition.size());
  }
  REQUIRE(total_equilibria > 0, "every instance had an empty set; vacuous");
  double dt = seconds_since(t0);
  REQUIRE(dt < 60.0, "took %.1f s, limit 60 s", dt);
  return true;
}

// Criterion 2 — the gap function basics across the corpus: psi(x, x) is zero
// bit-for-bit and V(x) is nonnegative on 10^4 sampled feasible profiles.
bool c2_psi_diagonal_and_gap_positivity() {
  std::mt19937_64 rng(4242);
  long checked = 0;

  const char* finite_names[] = {"prisoners-dilemma", "matching-pennies",
                                "locked-pair", "bigger-number-9"};
  for (const char* name : finite_names) {
    Economy econ = corpus_economy(name).economy;
    std::vector<long> feasible;
    for (long f = 0; f < econ.profile_count(); ++f) {
      if (is_feasible(econ, decision_from_flat(econ, f))) feasible.push_back(f);
    }
    REQUIRE(!feasible.empty(), "%s has no feasible profile", name);
    std::uniform_int_distribution<std::size_t> pick(0, feasible.size() - 1);
    for (int k = 0; k < 2000; ++k) {
      GlobalDecision x = decision_from_flat(econ, feasible[pick(rng)]);
      NIValue ni = nikaido_isoda(econ, x, x);
      REQUIRE(ni.psi == 0.0, "%s: psi(x, x) = %.17g is not exactly zero",
              name, ni.psi);
      double v = big_v(econ, x).value;
      REQUIRE(v >= 0.0, "%s: V(x) = %.17g < 0", name, v);
      ++checked;
    }
  }

  Economy link = shared_link_game().economy;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int accepted = 0;
  while (accepted < 2000) {
    GlobalDecision x =
        decision_from_coords(link, {{unit(rng)}, {unit(rng)}});
    if (!is_feasible(link, x)) continue;
    ++accepted;
    NIValue ni = nikaido_isoda(link, x, x);
    REQUIRE(ni.psi == 0.0, "shared-link: psi(x, x) = %.17g is not zero",
            ni.psi);
    double v = big_v(link, x).value;
    REQUIRE(v >= 0.0, "shared-link: V(x) = %.17g < 0", v);
    ++checked;
  }

  REQUIRE(checked == 10000, "sampled %ld points, expected 10000", checked);
  return true;
}

// Criterion 3 — one-way direction of the joint-deviation gap: on random
// all-finite economies with a shared constraint, a zero tilde-V value (and
// likewise membership of x in its own tilde-R set) always certifies a Nash
// equilibrium.  Zero counterexamples allowed.
bool c3_shared_gap_certifies() {
  std::mt19937_64 rng(9090);
  long confirmed = 0;
  for (int inst = 0; inst < 100; ++inst) {
    testing::RandomEconomyOptions opt;
    opt.shared = true;
    Economy econ = testing::random_finite_economy(rng, opt);
    for (long f = 0; f < econ.profile_count(); ++f) {
      GlobalDecision x = decision_from_flat(econ, f);
      if (!is_feasible(econ, x)) continue;
      TildeResult tv = tilde_v(econ, x);
      if (tv.value <= 1e-12) {
        REQUIRE(in_tilde_r_set(econ, x, 1e-12),
                "instance %d, profile %ld: zero value but not a tilde-R "
                "fixed point", inst, f);
        Verdict v = is_nash_equilibrium(econ, x).verdict;
        REQUIRE(v == Verdict::equilibrium,
                "instance %d, profile %ld: tilde-V = %.17g <= 1e-12 but "
                "verdict is %s", inst, f, tv.value, to_cstring(v));
        ++confirmed;
      }
    }
  }
  REQUIRE(confirmed > 0, "no zero-gap profile was ever generated");
  return true;
}

// Criterion 4 — the converse direction genuinely fails: the locked-pair
// economy has (0, 0) as an equilibrium whose joint-deviation gap is 2.
bool c4_one_way_gap_witness() {
  Economy lp = locked_pair_game().economy;
  GlobalDecision x = decision_from_labels(lp, {"0", "0"});
  Verdict v = is_nash_equilibrium(lp, x).verdict;
  REQUIRE(v == Verdict::equilibrium, "(0,0) verdict is %s", to_cstring(v));
  TildeResult tv = tilde_v(lp, x);
  REQUIRE(std::fabs(tv.value - 2.0) <= 1e-12,
          "tilde-V((0,0)) = %.17g, expected 2 within 1e-12", tv.value);
  return true;
}

// Criterion 5 — the capped bigger-number economy has exactly the all-cap
// profile as equilibrium for every cap M in 1..50, and embedding the M-cap
// profiles into the (M+1)-cap economy hands every profile except (M, M) a
// strictly improving deviation.
bool c5_bigger_number_cap_and_embedding() {
  auto t0 = std::chrono::steady_clock::now();
  for (int m = 1; m <= 50; ++m) {
    Economy g = bigger_number_game(m).economy;
    SolveResult r = enumerate_equilibria(g);
    REQUIRE(r.status == SolveStatus::found, "cap %d: status %s", m,
            to_cstring(r.status));
    REQUIRE(r.equilibria.size() == 1, "cap %d: %zu equilibria, expected 1",
            m, r.equilibria.size());
    for (int i = 0; i < 2; ++i) {
      int label = r.equilibria[0].x.points[i].label;
      REQUIRE(label == m, "cap %d: player %d plays %d, expected %d", m,
              i + 1, label, m);
    }

    Economy big = bigger_number_game(m + 1).economy;
    for (int a = 0; a <= m; ++a) {
      for (int b = 0; b <= m; ++b) {
        if (a == m && b == m) continue;
        GlobalDecision x;
        x.points.push_back(point_from_label(big, 1, a));
        x.points.push_back(point_from_label(big, 2, b));
        EquilibriumReport rep = is_nash_equilibrium(big, x);
        REQUIRE(rep.verdict == Verdict::not_equilibrium,
                "cap %d embedded in %d: (%d,%d) not refuted", m, m + 1, a, b);
        REQUIRE(rep.witness_player.has_value(),
                "cap %d: (%d,%d) refuted without a witness", m, a, b);
        double gain = rep.checks[*rep.witness_player - 1].improvement;
        REQUIRE(gain > 0.0, "cap %d: (%d,%d) witness gain %.17g not strict",
                m, a, b, gain);
      }
    }
  }
  double dt = seconds_since(t0);
  REQUIRE(dt < 30.0, "took %.1f s, limit 30 s", dt);
  return true;
}

// Independent oracle for the shared-link economy: best payoff improvement for
// one player over a 1025-point scan of its admissible interval, from the
// closed-form payoff y * (2 - y - opp) written out inline.
double link_scan_improvement(double own, double opp) {
  const double cap = 1.0 - opp;
  double best = -1e300;
  for (int k = 0; k <= 1024; ++k) {
    double y = cap * static_cast<double>(k) / 1024.0;
    double val = y * (2.0 - y - opp);
    if (val > best) best = val;
  }
  return best - own * (2.0 - own - opp);
}

// Criterion 6 — searching the jointly constrained continuum: minimizing the
// joint-deviation gap on the shared-link economy with a 10^4 budget returns
// at least one point with gap <= 1e-6; every returned point sits on the
// binding line within 1e-3 and verifies as an equilibrium at tolerance 1e-4;
// all of it cross-checked against a 1025x1025 grid oracle.
bool c6_shared_link_search() {
  auto t0 = std::chrono::steady_clock::now();
  Economy link = shared_link_game().economy;
  Config cfg;
  cfg.budget = 10000;
  SolveResult r = minimize_v(link, CertMethod::tilde_v, cfg);
  REQUIRE(r.status == SolveStatus::found, "status %s", to_cstring(r.status));
  REQUIRE(!r.equilibria.empty(), "no points returned");

  int small_gap = 0;
  double best_value = 1e300;
  double best_x1 = -1.0, best_x2 = -1.0;
  for (const SolvedPoint& sp : r.equilibria) {
    double x1 = sp.x.points[0].coords[0];
    double x2 = sp.x.points[1].coords[0];
    if (sp.value <= 1e-6) ++small_gap;
    if (sp.value < best_value) {
      best_value = sp.value;
      best_x1 = x1;
      best_x2 = x2;
    }
    REQUIRE(std::fabs(x1 + x2 - 1.0) <= 1e-3,
            "returned point (%.17g, %.17g) off the binding line", x1, x2);
    Config tight;
    tight.tol_eq = 1e-4;
    Verdict v = is_nash_equilibrium(link, sp.x, tight).verdict;
    REQUIRE(v == Verdict::equilibrium,
            "returned point (%.17g, %.17g) verdict %s at tol 1e-4", x1, x2,
            to_cstring(v));
    // Grid oracle on the returned point itself: neither player can improve
    // by more than 1e-3 along a 1025-point scan of its interval.
    REQUIRE(link_scan_improvement(x1, x2) <= 1e-3,
            "oracle refutes (%.17g, %.17g) for player 1", x1, x2);
    REQUIRE(link_scan_improvement(x2, x1) <= 1e-3,
            "oracle refutes (%.17g, %.17g) for player 2", x1, x2);
  }
  REQUIRE(small_gap >= 1, "no returned point has gap <= 1e-6 (best %.17g)",
          best_value);

  // Full 1025^2 oracle sweep: the oracle-equilibrium set is the binding
  // line x1 + x2 = 1 (within grid resolution), and the best returned point
  // lies next to an oracle equilibrium.
  const double h = 1.0 / 1024.0;
  std::vector<double> best1(1025);
  for (int j = 0; j <= 1024; ++j) {
    double opp = j * h;
    double best = -1e300;
    for (int k = 0; k <= 1024 - j; ++k) {
      double y = k * h;
      double val = y * (2.0 - y - opp);
      if (val > best) best = val;
    }
    best1[j] = best;
  }
  bool best_returned_matched = false;
  long oracle_points = 0;
  for (int i = 0; i <= 1024; ++i) {
    for (int j = 0; j <= 1024 - i; ++j) {
      double x1 = i * h, x2 = j * h;
      double imp1 = best1[j] - x1 * (2.0 - x1 - x2);
      double imp2 = best1[i] - x2 * (2.0 - x2 - x1);
      bool oracle_eq = imp1 <= 1e-3 && imp2 <= 1e-3;
      if (i + j == 1024) {
        REQUIRE(oracle_eq, "oracle misses line point (%.17g, %.17g)", x1, x2);
      }
      if (!oracle_eq) continue;
      ++oracle_points;
      REQUIRE(std::fabs(x1 + x2 - 1.0) <= 3.0 * h,
              "oracle equilibrium (%.17g, %.17g) far from the line", x1, x2);
      if (std::fabs(x1 - best_x1) <= 2.0 * h &&
          std::fabs(x2 - best_x2) <= 2.0 * h) {
        best_returned_matched = true;
      }
    }
  }
  REQUIRE(oracle_points >= 1025, "oracle found only %ld equilibria",
          oracle_points);
  REQUIRE(best_returned_matched,
          "best returned point (%.17g, %.17g) matches no oracle equilibrium",
          best_x1, best_x2);

  double dt = seconds_since(t0);
  REQUIRE(dt < 60.0, "took %.1f s, limit 60 s", dt);
  return true;
}

// Criterion 7 — the segment-sampling probe: concave and linear payoffs come
// back clean with a contiguous 1-D argmax, while the convex bump is refuted
// and its argmax splits into the two extreme grid indices.
bool c7_quasiconcavity_probe() {
  Economy link = shared_link_game().economy;
  GlobalDecision mid = decision_from_coords(link, {{0.5}, {0.5}});
  QuasiConcavityReport concave = probe_quasiconcavity(link, 1, mid, 200);
  REQUIRE(concave.violations == 0, "concave payoff: %ld violations",
          concave.violations);
  REQUIRE(concave.one_dimensional && concave.argmax_contiguous,
          "concave payoff: argmax not contiguous");

  BoxSpace unit{{0.0}, {1.0}};
  {
    std::vector<Payoff> pays;
    pays.emplace_back(FormulaPayoff{parse_expr("2*y[0] + 1")});
    Economy lin({unit}, Unconstrained{}, std::move(pays));
    GlobalDecision x = decision_from_coords(lin, {{0.5}});
    QuasiConcavityReport rep = probe_quasiconcavity(lin, 1, x, 200);
    REQUIRE(rep.violations == 0, "linear payoff: %ld violations",
            rep.violations);
    REQUIRE(rep.argmax_contiguous, "linear payoff: argmax not contiguous");
  }
  {
    std::vector<Payoff> pays;
    pays.emplace_back(FormulaPayoff{parse_expr("pow(y[0] - 0.5, 2)")});
    Economy bump({unit}, Unconstrained{}, std::move(pays));
    GlobalDecision x = decision_from_coords(bump, {{0.5}});
    QuasiConcavityReport rep = probe_quasiconcavity(bump, 1, x, 200);
    REQUIRE(rep.violations >= 1, "convex bump: no violation found");
    REQUIRE(!rep.argmax_contiguous, "convex bump: argmax contiguous");
    REQUIRE(rep.argmax_first == 0 && rep.argmax_last == 256 &&
                rep.argmax_count == 2,
            "convex bump: argmax {%ld..%ld} x%ld, expected the two ends",
            rep.argmax_first, rep.argmax_last, rep.argmax_count);
  }
  return true;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::filesystem::path& dir, const std::string& args) {
  auto out_path = dir / "stdout.txt";
  std::string cmd = std::string(GNEP_CLI_PATH) + " " + args + " > " +
                    out_path.string() + " 2> /dev/null";
  int raw = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

// Criterion 8 — determinism of the front end: repeating any command with the
// same seed yields byte-identical report JSON, across every subcommand.
bool c8_cli_determinism() {
  auto dir = std::filesystem::temp_directory_path() /
             ("gnep_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto sl = dir / "shared-link.json";
  auto mp = dir / "matching-pennies.json";
  std::ofstream(sl) << save_economy(shared_link_game().economy);
  std::ofstream(mp) << save_economy(matching_pennies().economy);

  const std::string commands[] = {
      "validate " + sl.string(),
      "verify " + sl.string() + " --point [0.5,0.5]",
      "solve " + mp.string() + " --algorithm enumerate",
      "solve " + sl.string() +
          " --algorithm minimize-tilde-v --budget 3000 --seed 3",
      "solve " + mp.string() + " --algorithm best-response --max-iter 40",
      "eval " + sl.string() + " --x [0.3,0.7]",
      "probe " + sl.string() + " --player 1 --samples 250 --seed 11",
      "corpus bigger-number-12",
  };
  for (const std::string& cmd : commands) {
    CliRun a = run_cli(dir, cmd);
    CliRun b = run_cli(dir, cmd);
    REQUIRE(a.exit_code == 0, "'%s' exited %d", cmd.c_str(), a.exit_code);
    REQUIRE(b.exit_code == 0, "'%s' exited %d on repeat", cmd.c_str(),
            b.exit_code);
    REQUIRE(!a.out.empty(), "'%s' produced no report", cmd.c_str());
    REQUIRE(a.out == b.out, "'%s' reports differ between runs", cmd.c_str());
  }
  return true;
}

struct Criterion {
  const char* name;
  bool (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"1 four-way equivalence on 100 random economies, exact",
       c1_four_way_equivalence},
      {"2 psi(x,x) = 0 exactly and V >= 0 on 10^4 corpus points",
       c2_psi_diagonal_and_gap_positivity},
      {"3 zero shared gap certifies equilibrium on 100 random economies",
       c3_shared_gap_certifies},
      {"4 locked pair: equilibrium (0,0) with gap 2 +/- 1e-12",
       c4_one_way_gap_witness},
      {"5 bigger-number cap unique for M = 1..50, embedding refutes the rest",
       c5_bigger_number_cap_and_embedding},
      {"6 shared-link search: gap <= 1e-6, line within 1e-3, grid oracle",
       c6_shared_link_search},
      {"7 probe: concave/linear clean, convex bump refuted at the two ends",
       c7_quasiconcavity_probe},
      {"8 cli determinism: byte-identical reports for every subcommand",
       c8_cli_determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = c.run();
    std::printf("[%s] %s (%.1f s)\n", ok ? "PASS" : "FAIL", c.name,
                seconds_since(t0));
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  if (failed) {
    std::printf("%d of 8 criteria failed\n", failed);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
