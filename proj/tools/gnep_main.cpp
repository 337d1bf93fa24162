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

// Command-line front end.  Reports are JSON on standard output with a fixed
// field order and 17-significant-digit numbers so that identical invocations
// with the same seed produce byte-identical bytes; the human-readable summary
// and timing go to standard error.  Exit code 0 covers findings ("not
// equilibrium", "none-exist"); nonzero is reserved for structural errors.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gnep/corpus.hpp"
#include "gnep/economy_io.hpp"
#include "gnep/solver.hpp"

namespace {

using gnep::Certificate;
using gnep::Config;
using gnep::DecisionPoint;
using gnep::Economy;
using gnep::EquilibriumReport;
using gnep::GlobalDecision;
using gnep::ModelError;
using gnep::ordered_json;
using gnep::QuasiConcavityReport;
using gnep::SolveResult;
using gnep::ValidationReport;

// ---- report serialization -------------------------------------------------

ordered_json config_json(const Config& cfg) {
  ordered_json j = ordered_json::object();
  j["tol_feas"] = cfg.tol_feas;
  j["tol_eq"] = cfg.tol_eq;
  j["tol_opt"] = cfg.tol_opt;
  j["tol_dedup"] = cfg.tol_dedup;
  j["tol_cert"] = cfg.tol_cert;
  j["grid_points"] = cfg.grid_points;
  j["refine_rounds"] = cfg.refine_rounds;
  j["refine_shrink"] = cfg.refine_shrink;
  j["max_reply_points"] = cfg.max_reply_points;
  j["slice_grid"] = cfg.slice_grid;
  j["budget"] = cfg.budget;
  j["sample_rounds"] = cfg.sample_rounds;
  j["sample_shrink"] = cfg.sample_shrink;
  j["tilde_budget"] = cfg.tilde_budget;
  j["tilde_budget_coarse"] = cfg.tilde_budget_coarse;
  j["max_iter"] = cfg.max_iter;
  j["cycle_window"] = cfg.cycle_window;
  j["cycle_tol"] = cfg.cycle_tol;
  j["seed"] = cfg.seed;
  j["contiguity_grid"] = cfg.contiguity_grid;
  return j;
}

ordered_json economy_digest(const Economy& econ) {
  ordered_json d = ordered_json::object();
  d["players"] = econ.players();
  ordered_json spaces = ordered_json::array();
  for (int i = 1; i <= econ.players(); ++i) {
    ordered_json s = ordered_json::object();
    if (econ.finite(i)) {
      s["kind"] = "finite";
      s["labels"] = econ.label_count(i);
    } else {
      s["kind"] = "box";
      s["dim"] = econ.dim(i);
    }
    spaces.push_back(s);
  }
  d["spaces"] = spaces;
  if (std::holds_alternative<gnep::Unconstrained>(econ.constraint())) {
    d["constraint"] = "unconstrained";
  } else if (std::holds_alternative<gnep::SharedConstraint>(econ.constraint())) {
    d["constraint"] = "shared";
  } else {
    d["constraint"] = "bounds";
  }
  ordered_json payoffs = ordered_json::array();
  for (int i = 1; i <= econ.players(); ++i) {
    payoffs.push_back(std::holds_alternative<gnep::TablePayoff>(econ.payoff(i))
                          ? "table"
                          : "formula");
  }
  d["payoffs"] = payoffs;
  d["own_independent"] = gnep::own_independent(econ);
  d["admissible_form"] = gnep::admissible_form(econ);
  return d;
}

ordered_json point_json(const Economy& econ, int i, const DecisionPoint& p) {
  ordered_json j = ordered_json::object();
  if (econ.finite(i)) {
    j["label"] = econ.finite_space(i).labels[p.label];
    j["index"] = p.label;
  }
  j["coords"] = p.coords;
  return j;
}

ordered_json decision_json(const Economy& econ, const GlobalDecision& x) {
  ordered_json arr = ordered_json::array();
  for (int i = 1; i <= econ.players(); ++i) {
    arr.push_back(point_json(econ, i, x.points[i - 1]));
  }
  return arr;
}

ordered_json equilibrium_json(const Economy& econ,
                              const EquilibriumReport& rep) {
  ordered_json j = ordered_json::object();
  j["verdict"] = gnep::to_cstring(rep.verdict);
  j["feasible"] = rep.feasible;
  j["tol_eq"] = rep.tol_eq;
  if (rep.witness_player) {
    j["witness_player"] = *rep.witness_player;
  } else {
    j["witness_player"] = nullptr;
  }
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json cj = ordered_json::object();
    cj["player"] = c.player;
    cj["current"] = c.current;
    cj["marginal"] = c.marginal;
    cj["improvement"] = c.improvement;
    cj["best"] = point_json(econ, c.player, c.best);
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["note"] = rep.note;
  return j;
}

ordered_json certificate_json(const Economy& econ, const Certificate& cert) {
  ordered_json j = ordered_json::object();
  j["method"] = gnep::to_cstring(cert.method);
  j["applicable"] = cert.applicable;
  j["value"] = cert.value;
  if (static_cast<int>(cert.maximizer.points.size()) == econ.players()) {
    j["maximizer"] = decision_json(econ, cert.maximizer);
  } else {
    j["maximizer"] = nullptr;
  }
  j["exact"] = cert.exact;
  j["converged"] = cert.converged;
  j["conclusion"] = gnep::to_cstring(cert.conclusion);
  j["tol_cert"] = cert.tol_cert;
  j["note"] = cert.note;
  return j;
}

ordered_json solve_json(const Economy& econ, const SolveResult& r) {
  ordered_json j = ordered_json::object();
  j["status"] = gnep::to_cstring(r.status);
  ordered_json eqs = ordered_json::array();
  for (const auto& sp : r.equilibria) {
    ordered_json e = ordered_json::object();
    e["point"] = decision_json(econ, sp.x);
    e["value"] = sp.value;
    e["verdict"] = gnep::to_cstring(sp.report.verdict);
    e["certificate"] = certificate_json(econ, sp.certificate);
    eqs.push_back(e);
  }
  j["equilibria"] = eqs;
  ordered_json trace = ordered_json::array();
  for (const auto& t : r.trace) {
    ordered_json e = ordered_json::object();
    e["point"] = decision_json(econ, t.x);
    e["value"] = t.value;
    trace.push_back(e);
  }
  j["trace"] = trace;
  j["budget_consumed"] = r.budget_consumed;
  j["note"] = r.note;
  return j;
}

ordered_json validation_json(const Economy& econ, const ValidationReport& rep) {
  ordered_json j = ordered_json::object();
  j["exhaustive"] = rep.exhaustive;
  j["fixed_point_found"] = rep.fixed_point_found;
  if (rep.fixed_point) {
    j["fixed_point"] = decision_json(econ, *rep.fixed_point);
  } else {
    j["fixed_point"] = nullptr;
  }
  j["profiles_checked"] = rep.profiles_checked;
  j["empty_slice_found"] = rep.empty_slice_found;
  j["empty_slice_note"] = rep.empty_slice_note;
  j["own_dependent_players"] = rep.own_dependent_players;
  j["warnings"] = rep.warnings;
  return j;
}

ordered_json probe_json(const Economy& econ, const QuasiConcavityReport& rep) {
  ordered_json j = ordered_json::object();
  j["player"] = rep.player;
  j["anchor"] = decision_json(econ, rep.anchor);
  j["pairs_sampled"] = rep.pairs_sampled;
  j["violations"] = rep.violations;
  if (rep.has_worst) {
    ordered_json w = ordered_json::object();
    w["a"] = point_json(econ, rep.player, rep.worst.a);
    w["b"] = point_json(econ, rep.player, rep.worst.b);
    w["lambda"] = rep.worst.lambda;
    w["value"] = rep.worst.value;
    w["endpoint_min"] = rep.worst.endpoint_min;
    j["worst"] = w;
  } else {
    j["worst"] = nullptr;
  }
  j["one_dimensional"] = rep.one_dimensional;
  j["argmax_contiguous"] = rep.argmax_contiguous;
  j["argmax_first"] = rep.argmax_first;
  j["argmax_last"] = rep.argmax_last;
  j["argmax_count"] = rep.argmax_count;
  return j;
}

// ---- input parsing --------------------------------------------------------

// A point is a JSON array with one entry per player: a label string, a label
// index (finite) or single coordinate (1-d box), or a coordinate array.
GlobalDecision parse_point(const Economy& econ, const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("point is not valid JSON: ") + e.what());
  }
  if (!j.is_array() ||
      static_cast<int>(j.size()) != econ.players()) {
    throw ModelError("point must be a JSON array with one entry per player (" +
                     std::to_string(econ.players()) + " expected)");
  }
  GlobalDecision x;
  for (int i = 1; i <= econ.players(); ++i) {
    const ordered_json& e = j[i - 1];
    if (e.is_string()) {
      if (!econ.finite(i)) {
        throw ModelError("player " + std::to_string(i) +
                         " has a continuous space; labels do not apply");
      }
      int idx = econ.label_index(i, e.get<std::string>());
      if (idx < 0) {
        throw ModelError("unknown label '" + e.get<std::string>() +
                         "' for player " + std::to_string(i));
      }
      x.points.push_back(gnep::point_from_label(econ, i, idx));
    } else if (e.is_number() && !e.is_number_float() && econ.finite(i)) {
      long idx = e.get<long>();
      if (idx < 0 || idx >= econ.label_count(i)) {
        throw ModelError("label index " + std::to_string(idx) +
                         " out of range for player " + std::to_string(i));
      }
      x.points.push_back(
          gnep::point_from_label(econ, i, static_cast<int>(idx)));
    } else if (e.is_number() || e.is_array()) {
      std::vector<double> coords;
      if (e.is_number()) {
        coords.push_back(e.get<double>());
      } else {
        for (const auto& v : e) {
          if (!v.is_number()) {
            throw ModelError("coordinates for player " + std::to_string(i) +
                             " must be numbers");
          }
          coords.push_back(v.get<double>());
        }
      }
      if (econ.finite(i)) {
        // Coordinates over a finite space must hit a listed point exactly.
        int found = -1;
        for (int l = 0; l < econ.label_count(i); ++l) {
          if (econ.finite_space(i).points[l] == coords) {
            found = l;
            break;
          }
        }
        if (found < 0) {
          throw ModelError("coordinates for player " + std::to_string(i) +
                           " match no finite point");
        }
        x.points.push_back(gnep::point_from_label(econ, i, found));
      } else {
        if (static_cast<int>(coords.size()) != econ.dim(i)) {
          throw ModelError("player " + std::to_string(i) + " expects " +
                           std::to_string(econ.dim(i)) + " coordinate(s)");
        }
        DecisionPoint p;
        p.coords = std::move(coords);
        x.points.push_back(p);
      }
    } else {
      throw ModelError("point entry for player " + std::to_string(i) +
                       " must be a label, an index, or a coordinate array");
    }
  }
  if (!gnep::in_space(econ, x)) {
    throw ModelError("point lies outside the ambient decision space");
  }
  return x;
}

// Default anchor: first label for finite players, box midpoint otherwise.
GlobalDecision default_point(const Economy& econ) {
  GlobalDecision x;
  for (int i = 1; i <= econ.players(); ++i) {
    if (econ.finite(i)) {
      x.points.push_back(gnep::point_from_label(econ, i, 0));
    } else {
      DecisionPoint p;
      const auto& box = econ.box_space(i);
      for (int k = 0; k < econ.dim(i); ++k) {
        p.coords.push_back(0.5 * (box.lower[k] + box.upper[k]));
      }
      x.points.push_back(p);
    }
  }
  return x;
}

// ---- command plumbing -----------------------------------------------------

struct CliOptions {
  Config cfg;
  std::string input;
  std::string point_text;
  std::string x_text;
  std::string y_text;
  std::string start_text;
  std::string algorithm;
  std::string corpus_name;
  std::string export_path;
  int player = 1;
  long samples = 200;
};

ordered_json base_report(const std::string& command,
                         const std::vector<std::string>& argv_echo,
                         const ordered_json& arguments, const Config& cfg) {
  ordered_json j = ordered_json::object();
  j["command"] = command;
  j["argv"] = argv_echo;
  j["arguments"] = arguments;
  j["config"] = config_json(cfg);
  return j;
}

int emit(const ordered_json& report, const std::string& summary,
         std::chrono::steady_clock::time_point t0) {
  std::fputs(gnep::json_to_string(report).c_str(), stdout);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  std::fprintf(stderr, "%s (%.1f ms)\n", summary.c_str(), ms);
  return 0;
}

int cmd_validate(const CliOptions& opt,
                 const std::vector<std::string>& argv_echo,
                 std::chrono::steady_clock::time_point t0) {
  Economy econ = gnep::load_economy_file(opt.input);
  ValidationReport rep = gnep::validate(econ, opt.cfg.budget, opt.cfg);
  ordered_json args = ordered_json::object();
  args["input"] = opt.input;
  ordered_json report = base_report("validate", argv_echo, args, opt.cfg);
  report["economy"] = economy_digest(econ);
  report["results"] = validation_json(econ, rep);
  std::string summary = "validate: ";
  if (rep.fixed_point_found) {
    summary += "found x with x in X(x) at " +
               gnep::to_string(econ, *rep.fixed_point);
  } else {
    summary += "no fixed point of the constraint map found (" +
               std::to_string(rep.profiles_checked) + " profiles checked)";
  }
  return emit(report, summary, t0);
}

int cmd_verify(const CliOptions& opt, const std::vector<std::string>& argv_echo,
               std::chrono::steady_clock::time_point t0) {
  Economy econ = gnep::load_economy_file(opt.input);
  GlobalDecision x = parse_point(econ, opt.point_text);
  EquilibriumReport eq = gnep::is_nash_equilibrium(econ, x, opt.cfg);
  Certificate cv = gnep::certify(econ, x, gnep::CertMethod::v, opt.cfg);
  Certificate ct = gnep::certify(econ, x, gnep::CertMethod::tilde_v, opt.cfg);
  ordered_json args = ordered_json::object();
  args["input"] = opt.input;
  args["point"] = opt.point_text;
  ordered_json report = base_report("verify", argv_echo, args, opt.cfg);
  report["economy"] = economy_digest(econ);
  ordered_json results = ordered_json::object();
  results["point"] = decision_json(econ, x);
  results["equilibrium"] = equilibrium_json(econ, eq);
  ordered_json certs = ordered_json::array();
  certs.push_back(certificate_json(econ, cv));
  certs.push_back(certificate_json(econ, ct));
  results["certificates"] = certs;
  report["results"] = results;
  std::string summary = std::string("verify: ") + gnep::to_cstring(eq.verdict) +
                        " at " + gnep::to_string(econ, x);
  return emit(report, summary, t0);
}

int cmd_solve(const CliOptions& opt, const std::vector<std::string>& argv_echo,
              std::chrono::steady_clock::time_point t0) {
  Economy econ = gnep::load_economy_file(opt.input);
  SolveResult res;
  if (opt.algorithm == "enumerate") {
    res = gnep::enumerate_equilibria(econ, opt.cfg);
  } else if (opt.algorithm == "best-response") {
    GlobalDecision x0 = opt.start_text.empty()
                            ? default_point(econ)
                            : parse_point(econ, opt.start_text);
    res = gnep::best_response_iteration(econ, x0, opt.cfg);
  } else if (opt.algorithm == "minimize-v") {
    res = gnep::minimize_v(econ, gnep::CertMethod::v, opt.cfg);
  } else if (opt.algorithm == "minimize-tilde-v") {
    res = gnep::minimize_v(econ, gnep::CertMethod::tilde_v, opt.cfg);
  } else {
    throw ModelError(
        "unknown algorithm '" + opt.algorithm +
        "'; expected enumerate, best-response, minimize-v, minimize-tilde-v");
  }
  ordered_json args = ordered_json::object();
  args["input"] = opt.input;
  args["algorithm"] = opt.algorithm;
  if (!opt.start_text.empty()) args["start"] = opt.start_text;
  ordered_json report = base_report("solve", argv_echo, args, opt.cfg);
  report["economy"] = economy_digest(econ);
  report["results"] = solve_json(econ, res);
  std::string summary = std::string("solve: ") + gnep::to_cstring(res.status) +
                        ", " + std::to_string(res.equilibria.size()) +
                        " equilibrium point(s)";
  return emit(report, summary, t0);
}

int cmd_eval(const CliOptions& opt, const std::vector<std::string>& argv_echo,
             std::chrono::steady_clock::time_point t0) {
  Economy econ = gnep::load_economy_file(opt.input);
  GlobalDecision x = parse_point(econ, opt.x_text);
  ordered_json args = ordered_json::object();
  args["input"] = opt.input;
  args["x"] = opt.x_text;
  if (!opt.y_text.empty()) args["y"] = opt.y_text;
  ordered_json report = base_report("eval", argv_echo, args, opt.cfg);
  report["economy"] = economy_digest(econ);
  ordered_json results = ordered_json::object();
  results["x"] = decision_json(econ, x);
  if (!opt.y_text.empty()) {
    GlobalDecision y = parse_point(econ, opt.y_text);
    gnep::NIValue ni = gnep::nikaido_isoda(econ, x, y);
    ordered_json pj = ordered_json::object();
    pj["y"] = decision_json(econ, y);
    pj["value"] = ni.psi;
    pj["terms"] = ni.terms;
    results["psi"] = pj;
  } else {
    results["psi"] = nullptr;
  }
  gnep::VResult v = gnep::big_v(econ, x, opt.cfg);
  ordered_json vj = ordered_json::object();
  vj["value"] = v.value;
  vj["maximizer"] = decision_json(econ, v.maximizer);
  vj["terms"] = v.terms;
  vj["exact"] = v.exact;
  vj["converged"] = v.converged;
  results["v"] = vj;
  ordered_json tj = ordered_json::object();
  if (gnep::admissible_form(econ)) {
    try {
      gnep::TildeResult t = gnep::tilde_v(econ, x, opt.cfg);
      tj["applicable"] = true;
      tj["value"] = t.value;
      tj["maximizer"] = decision_json(econ, t.maximizer);
      tj["exact"] = t.exact;
      tj["converged"] = t.converged;
      tj["evals"] = t.evals;
      tj["note"] = "";
    } catch (const ModelError& e) {
      tj["applicable"] = false;
      tj["note"] = e.what();
    }
  } else {
    tj["applicable"] = false;
    tj["note"] = "economy is not in admissible form (no shared constraint)";
  }
  results["tilde_v"] = tj;
  report["results"] = results;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v.value);
  std::string summary =
      "eval: V(x) = " + std::string(buf) + " at " + gnep::to_string(econ, x);
  return emit(report, summary, t0);
}

int cmd_probe(const CliOptions& opt, const std::vector<std::string>& argv_echo,
              std::chrono::steady_clock::time_point t0) {
  Economy econ = gnep::load_economy_file(opt.input);
  GlobalDecision x = opt.point_text.empty() ? default_point(econ)
                                            : parse_point(econ, opt.point_text);
  QuasiConcavityReport rep =
      gnep::probe_quasiconcavity(econ, opt.player, x, opt.samples, opt.cfg);
  ordered_json args = ordered_json::object();
  args["input"] = opt.input;
  args["player"] = opt.player;
  if (!opt.point_text.empty()) args["point"] = opt.point_text;
  args["samples"] = opt.samples;
  ordered_json report = base_report("probe", argv_echo, args, opt.cfg);
  report["economy"] = economy_digest(econ);
  report["results"] = probe_json(econ, rep);
  std::string summary =
      "probe: player " + std::to_string(opt.player) + ", " +
      std::to_string(rep.violations) + " quasi-concavity violation(s) in " +
      std::to_string(rep.pairs_sampled) + " pair(s)";
  return emit(report, summary, t0);
}

int cmd_corpus(const CliOptions& opt, const std::vector<std::string>& argv_echo,
               std::chrono::steady_clock::time_point t0) {
  gnep::NamedEconomy named = gnep::corpus_economy(opt.corpus_name);
  ordered_json args = ordered_json::object();
  args["name"] = opt.corpus_name;
  if (!opt.export_path.empty()) args["export"] = opt.export_path;
  ordered_json report = base_report("corpus", argv_echo, args, opt.cfg);
  report["economy"] = economy_digest(named.economy);
  ordered_json results = ordered_json::object();
  results["name"] = named.name;
  results["ground_truth"] = named.ground_truth;
  results["economy"] = gnep::economy_to_json(named.economy);
  if (!opt.export_path.empty()) {
    std::ofstream out(opt.export_path);
    if (!out) {
      throw ModelError("cannot open '" + opt.export_path + "' for writing");
    }
    out << gnep::save_economy(named.economy);
    if (!out) {
      throw ModelError("failed writing '" + opt.export_path + "'");
    }
    results["exported"] = opt.export_path;
  } else {
    results["exported"] = nullptr;
  }
  report["results"] = results;
  std::string summary = "corpus: " + named.name;
  if (!opt.export_path.empty()) summary += " exported to " + opt.export_path;
  return emit(report, summary, t0);
}

}  // namespace

int main(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> argv_echo(argv + 1, argv + argc);

  CliOptions opt;
  CLI::App app{
      "Model abstract economies, verify Nash equilibria, and search for them "
      "via the Nikaido-Isoda gap functions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol-eq", opt.cfg.tol_eq,
                 "improvement threshold for equilibrium checks");
  app.add_option("--tol-cert", opt.cfg.tol_cert,
                 "gap-value threshold for certificates");
  app.add_option("--seed", opt.cfg.seed, "seed for deterministic sampling");
  app.add_option("--budget", opt.cfg.budget, "candidate budget for searches");
  app.add_option("--grid", opt.cfg.grid_points,
                 "grid points per axis for box maximizers");
  app.add_option("--max-iter", opt.cfg.max_iter,
                 "sweep limit for best-response iteration");

  CLI::App* validate =
      app.add_subcommand("validate", "check structure and nonemptiness");
  validate->add_option("input", opt.input, "economy JSON file")->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "test a point for equilibrium and certify it");
  verify->add_option("input", opt.input, "economy JSON file")->required();
  verify->add_option("--point", opt.point_text, "profile as a JSON array")
      ->required();

  CLI::App* solve = app.add_subcommand("solve", "search for equilibria");
  solve->add_option("input", opt.input, "economy JSON file")->required();
  solve
      ->add_option("--algorithm", opt.algorithm,
                   "enumerate | best-response | minimize-v | minimize-tilde-v")
      ->required();
  solve->add_option("--start", opt.start_text,
                    "starting profile for best-response iteration");

  CLI::App* eval = app.add_subcommand(
      "eval", "evaluate the gap functions at a point");
  eval->add_option("input", opt.input, "economy JSON file")->required();
  eval->add_option("--x", opt.x_text, "profile as a JSON array")->required();
  eval->add_option("--y", opt.y_text, "joint deviation as a JSON array");

  CLI::App* probe = app.add_subcommand(
      "probe", "sample a payoff slice for quasi-concavity violations");
  probe->add_option("input", opt.input, "economy JSON file")->required();
  probe->add_option("--player", opt.player, "player index (1-based)")
      ->required();
  probe->add_option("--point", opt.point_text, "anchor profile");
  probe->add_option("--samples", opt.samples, "segment pairs to sample");

  CLI::App* corpus =
      app.add_subcommand("corpus", "materialize a built-in example economy");
  corpus->add_option("name", opt.corpus_name, "corpus economy name")
      ->required();
  corpus->add_option("--export", opt.export_path,
                     "write the economy JSON to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(opt, argv_echo, t0);
    if (verify->parsed()) return cmd_verify(opt, argv_echo, t0);
    if (solve->parsed()) return cmd_solve(opt, argv_echo, t0);
    if (eval->parsed()) return cmd_eval(opt, argv_echo, t0);
    if (probe->parsed()) return cmd_probe(opt, argv_echo, t0);
    if (corpus->parsed()) return cmd_corpus(opt, argv_echo, t0);
  } catch (const gnep::Error& e) {
    std::fprintf(stderr, "gnep: error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "gnep: internal error: %s\n", e.what());
    return 1;
  }
  std::fprintf(stderr, "gnep: no command given\n");
  return 1;
}
