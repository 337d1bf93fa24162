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

// Abstract economies: decision spaces, constraint correspondences, payoffs.
//
// An economy has N players. Player i (1-based) owns a decision space E_i,
// either a Finite label set with coordinate vectors or a coordinate Box.
// The admissible-decision map X_i(x) is derived from the constraint spec:
//   Unconstrained  X_i(x) = E_i
//   Shared         X_i(x) = { y : (x_1,..,y,..,x_N) satisfies all g_j <= 0 }
//   Bounds         X_i(x) = { y : lower_ik(x) <= y_k <= upper_ik(x) }
// Payoffs theta_i(x, y_i) score player i's deviation y_i against the
// current global decision x. Economies are immutable once constructed;
// the constructor rejects structural defects.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gnep/config.hpp"
#include "gnep/errors.hpp"
#include "gnep/expr.hpp"
#include "gnep/grid.hpp"

namespace gnep {

// ---- spaces ---------------------------------------------------------------

struct FiniteSpace {
  std::vector<std::string> labels;
  // One coordinate vector per label; when omitted, label index as a real.
  std::vector<std::vector<double>> points;
};

struct BoxSpace {
  std::vector<double> lower;
  std::vector<double> upper;
};

using DecisionSpace = std::variant<FiniteSpace, BoxSpace>;

// ---- constraints ----------------------------------------------------------

struct Unconstrained {};

// Inequalities g_j(x) <= 0 over x-variables only.
struct SharedConstraint {
  std::vector<Expr> inequalities;
};

struct BoundExpr {
  int player = 0;
  int coord = 0;
  Expr lower;
  Expr upper;
};

struct BoundConstraints {
  std::vector<BoundExpr> entries;
};

using ConstraintSpec =
    std::variant<Unconstrained, SharedConstraint, BoundConstraints>;

// ---- payoffs --------------------------------------------------------------

// (global profile, own deviation) -> value. Requires every space Finite and
// a value for every combination.
struct TableEntry {
  std::vector<std::string> profile;
  std::string deviation;
  double value = 0.0;
};

struct TablePayoff {
  std::vector<TableEntry> entries;
};

// Expression over x-variables and the deviation y.
struct FormulaPayoff {
  Expr expr;
};

using Payoff = std::variant<TablePayoff, FormulaPayoff>;

// ---- decisions ------------------------------------------------------------

// One player's decision: a label index into a Finite space (with its
// coordinate vector), or label = -1 with raw Box coordinates.
struct DecisionPoint {
  int label = -1;
  std::vector<double> coords;
};

struct GlobalDecision {
  std::vector<DecisionPoint> points;
};

// ---- feasible slices ------------------------------------------------------

struct FinitePoints {
  std::vector<int> labels;  // ascending label indices
};

struct SubBox {
  std::vector<double> lower;
  std::vector<double> upper;
  bool empty = false;
};

// X_i(x) for one player. An empty slice is representable and flagged, not an
// error, so validation can report strictness violations.
class FeasibleSlice {
 public:
  explicit FeasibleSlice(FinitePoints p) : v_(std::move(p)) {}
  explicit FeasibleSlice(SubBox b) : v_(std::move(b)) {}

  bool is_finite() const { return std::holds_alternative<FinitePoints>(v_); }
  const FinitePoints& finite() const { return std::get<FinitePoints>(v_); }
  const SubBox& box() const { return std::get<SubBox>(v_); }

  bool is_empty() const {
    if (is_finite()) return finite().labels.empty();
    const SubBox& b = box();
    if (b.empty) return true;
    for (std::size_t k = 0; k < b.lower.size(); ++k) {
      if (b.lower[k] > b.upper[k]) return true;
    }
    return false;
  }

 private:
  std::variant<FinitePoints, SubBox> v_;
};

// ---- economy --------------------------------------------------------------

class Economy {
 public:
  Economy(std::vector<DecisionSpace> spaces, ConstraintSpec constraint,
          std::vector<Payoff> payoffs)
      : spaces_(std::move(spaces)),
        constraint_(std::move(constraint)),
        payoffs_(std::move(payoffs)) {
    n_ = static_cast<int>(spaces_.size());
    if (n_ < 1) throw ModelError("economy needs at least one player");
    if (static_cast<int>(payoffs_.size()) != n_) {
      throw ModelError("expected one payoff per player");
    }
    resolve_spaces();
    check_constraint();
    resolve_payoffs();
  }

  int players() const { return n_; }
  const DecisionSpace& space(int i) const { return spaces_[i - 1]; }
  const ConstraintSpec& constraint() const { return constraint_; }
  const Payoff& payoff(int i) const { return payoffs_[i - 1]; }

  bool finite(int i) const {
    return std::holds_alternative<FiniteSpace>(spaces_[i - 1]);
  }
  const FiniteSpace& finite_space(int i) const {
    return std::get<FiniteSpace>(spaces_[i - 1]);
  }
  const BoxSpace& box_space(int i) const {
    return std::get<BoxSpace>(spaces_[i - 1]);
  }
  int dim(int i) const { return dims_[i - 1]; }
  bool all_finite() const { return all_finite_; }

  int label_count(int i) const {
    return static_cast<int>(finite_space(i).labels.size());
  }
  int label_index(int i, const std::string& label) const {
    const auto& m = label_ix_[i - 1];
    auto it = m.find(label);
    return it == m.end() ? -1 : it->second;
  }

  // All-Finite profile enumeration, player 1 most significant.
  long profile_count() const {
    if (!all_finite_) {
      throw UnsupportedError("profile enumeration needs finite spaces");
    }
    return profiles_;
  }
  long stride(int i) const { return strides_[i - 1]; }

  double table_value(int i, const GlobalDecision& x, int deviation) const {
    const auto& t = tables_[i - 1];
    long flat = 0;
    for (int j = 0; j < n_; ++j) flat += x.points[j].label * strides_[j];
    return t[flat * label_count(i) + deviation];
  }
  bool has_table(int i) const { return !tables_[i - 1].empty(); }

 private:
  void resolve_spaces() {
    dims_.resize(n_);
    all_finite_ = true;
    label_ix_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      if (auto* fs = std::get_if<FiniteSpace>(&spaces_[i])) {
        if (fs->labels.empty()) {
          throw ModelError("finite space " + std::to_string(i + 1) +
                           " has no labels");
        }
        if (fs->points.empty()) {
          for (std::size_t l = 0; l < fs->labels.size(); ++l) {
            fs->points.push_back({static_cast<double>(l)});
          }
        }
        if (fs->points.size() != fs->labels.size()) {
          throw ModelError("finite space " + std::to_string(i + 1) +
                           ": one point per label required");
        }
        dims_[i] = static_cast<int>(fs->points.front().size());
        if (dims_[i] < 1) {
          throw ModelError("finite space " + std::to_string(i + 1) +
                           ": points need at least one coordinate");
        }
        for (const auto& p : fs->points) {
          if (static_cast<int>(p.size()) != dims_[i]) {
            throw ModelError("finite space " + std::to_string(i + 1) +
                             ": inconsistent point dimensions");
          }
          for (double v : p) {
            if (!std::isfinite(v)) {
              throw ModelError("finite space " + std::to_string(i + 1) +
                               ": non-finite coordinate");
            }
          }
        }
        for (std::size_t l = 0; l < fs->labels.size(); ++l) {
          if (!label_ix_[i].emplace(fs->labels[l], static_cast<int>(l))
                   .second) {
            throw ModelError("finite space " + std::to_string(i + 1) +
                             ": duplicate label '" + fs->labels[l] + "'");
          }
        }
      } else {
        const auto& b = std::get<BoxSpace>(spaces_[i]);
        if (b.lower.empty() || b.lower.size() != b.upper.size()) {
          throw ModelError("box space " + std::to_string(i + 1) +
                           ": bad bounds");
        }
        for (std::size_t k = 0; k < b.lower.size(); ++k) {
          if (!std::isfinite(b.lower[k]) || !std::isfinite(b.upper[k]) ||
              b.lower[k] > b.upper[k]) {
            throw ModelError("box space " + std::to_string(i + 1) +
                             ": lower bound exceeds upper bound");
          }
        }
        dims_[i] = static_cast<int>(b.lower.size());
        all_finite_ = false;
      }
    }
    if (all_finite_) {
      const long cap = 100'000'000L;
      strides_.assign(n_, 1);
      for (int j = n_ - 2; j >= 0; --j) {
        strides_[j] = strides_[j + 1] *
                      static_cast<long>(
                          std::get<FiniteSpace>(spaces_[j + 1]).labels.size());
        if (strides_[j] > cap) throw ModelError("finite profile space too large");
      }
      profiles_ = strides_[0] * static_cast<long>(
                                    std::get<FiniteSpace>(spaces_[0]).labels.size());
      if (profiles_ > cap) throw ModelError("finite profile space too large");
    }
  }

  void check_vars(const Expr& e, bool allow_y, int y_dim, const std::string& where) {
    for (const VarRef& v : free_variables(e)) {
      if (v.deviation) {
        if (!allow_y) {
          throw ModelError(where + ": deviation variable " + to_string(v) +
                           " not allowed here");
        }
        if (v.coord >= y_dim) {
          throw ModelError(where + ": " + to_string(v) + " out of range");
        }
      } else {
        if (v.player < 1 || v.player > n_ || v.coord >= dims_[v.player - 1]) {
          throw ModelError(where + ": " + to_string(v) + " out of range");
        }
      }
    }
  }

  void check_constraint() {
    if (auto* sc = std::get_if<SharedConstraint>(&constraint_)) {
      for (std::size_t j = 0; j < sc->inequalities.size(); ++j) {
        check_vars(sc->inequalities[j], false, 0,
                   "shared inequality " + std::to_string(j));
      }
    } else if (auto* bc = std::get_if<BoundConstraints>(&constraint_)) {
      std::vector<std::vector<bool>> seen(n_);
      for (int i = 0; i < n_; ++i) seen[i].assign(dims_[i], false);
      for (const BoundExpr& e : bc->entries) {
        if (e.player < 1 || e.player > n_ || e.coord < 0 ||
            e.coord >= dims_[e.player - 1]) {
          throw ModelError("bound entry targets unknown coordinate");
        }
        if (seen[e.player - 1][e.coord]) {
          throw ModelError("duplicate bound entry for player " +
                           std::to_string(e.player) + " coordinate " +
                           std::to_string(e.coord));
        }
        seen[e.player - 1][e.coord] = true;
        std::string where = "bounds for player " + std::to_string(e.player);
        check_vars(e.lower, false, 0, where);
        check_vars(e.upper, false, 0, where);
      }
    }
  }

  void resolve_payoffs() {
    tables_.resize(n_);
    for (int i = 1; i <= n_; ++i) {
      if (auto* tp = std::get_if<TablePayoff>(&payoffs_[i - 1])) {
        if (!all_finite_) {
          throw ModelError("table payoff for player " + std::to_string(i) +
                           " requires every space to be finite");
        }
        long own = label_count(i);
        long total = profiles_ * own;
        auto& t = tables_[i - 1];
        t.assign(total, 0.0);
        std::vector<bool> seen(total, false);
        for (const TableEntry& e : tp->entries) {
          if (static_cast<int>(e.profile.size()) != n_) {
            throw ModelError("table entry for player " + std::to_string(i) +
                             ": profile needs one label per player");
          }
          long flat = 0;
          for (int j = 1; j <= n_; ++j) {
            int l = label_index(j, e.profile[j - 1]);
            if (l < 0) {
              throw ModelError("table entry for player " + std::to_string(i) +
                               ": unknown label '" + e.profile[j - 1] + "'");
            }
            flat += l * strides_[j - 1];
          }
          int dev = label_index(i, e.deviation);
          if (dev < 0) {
            throw ModelError("table entry for player " + std::to_string(i) +
                             ": unknown deviation label '" + e.deviation + "'");
          }
          if (!std::isfinite(e.value)) {
            throw ModelError("table entry for player " + std::to_string(i) +
                             ": non-finite value");
          }
          long slot = flat * own + dev;
          if (seen[slot]) {
            throw ModelError("duplicate table entry for player " +
                             std::to_string(i));
          }
          seen[slot] = true;
          t[slot] = e.value;
        }
        long have = std::count(seen.begin(), seen.end(), true);
        if (have != total) {
          throw ModelError("incomplete payoff table for player " +
                           std::to_string(i) + ": " + std::to_string(have) +
                           " of " + std::to_string(total) + " entries");
        }
      } else {
        const auto& fp = std::get<FormulaPayoff>(payoffs_[i - 1]);
        check_vars(fp.expr, true, dims_[i - 1],
                   "payoff formula for player " + std::to_string(i));
      }
    }
  }

  std::vector<DecisionSpace> spaces_;
  ConstraintSpec constraint_;
  std::vector<Payoff> payoffs_;
  int n_ = 0;
  std::vector<int> dims_;
  bool all_finite_ = true;
  std::vector<long> strides_;
  long profiles_ = 0;
  std::vector<std::unordered_map<std::string, int>> label_ix_;
  std::vector<std::vector<double>> tables_;
};

// ---- decision helpers -----------------------------------------------------

inline DecisionPoint point_from_label(const Economy& econ, int i, int label) {
  const FiniteSpace& fs = econ.finite_space(i);
  if (label < 0 || label >= static_cast<int>(fs.labels.size())) {
    throw ModelError("label index out of range for player " +
                     std::to_string(i));
  }
  return DecisionPoint{label, fs.points[label]};
}

inline GlobalDecision decision_from_labels(const Economy& econ,
                                           const std::vector<std::string>&
                                               labels) {
  if (static_cast<int>(labels.size()) != econ.players()) {
    throw ModelError("expected one label per player");
  }
  GlobalDecision x;
  for (int i = 1; i <= econ.players(); ++i) {
    if (!econ.finite(i)) {
      throw ModelError("player " + std::to_string(i) +
                       " has a continuous space; labels do not apply");
    }
    int l = econ.label_index(i, labels[i - 1]);
    if (l < 0) {
      throw ModelError("unknown label '" + labels[i - 1] + "' for player " +
                       std::to_string(i));
    }
    x.points.push_back(point_from_label(econ, i, l));
  }
  return x;
}

inline GlobalDecision decision_from_coords(
    const Economy& econ, const std::vector<std::vector<double>>& coords) {
  if (static_cast<int>(coords.size()) != econ.players()) {
    throw ModelError("expected one coordinate vector per player");
  }
  GlobalDecision x;
  for (int i = 1; i <= econ.players(); ++i) {
    const auto& c = coords[i - 1];
    if (static_cast<int>(c.size()) != econ.dim(i)) {
      throw ModelError("player " + std::to_string(i) + " expects " +
                       std::to_string(econ.dim(i)) + " coordinate(s)");
    }
    if (econ.finite(i)) {
      const FiniteSpace& fs = econ.finite_space(i);
      int found = -1;
      for (std::size_t l = 0; l < fs.points.size(); ++l) {
        if (fs.points[l] == c) {
          found = static_cast<int>(l);
          break;
        }
      }
      if (found < 0) {
        throw ModelError("coordinates do not name a point of player " +
                         std::to_string(i) + "'s finite space");
      }
      x.points.push_back(point_from_label(econ, i, found));
    } else {
      const BoxSpace& b = econ.box_space(i);
      for (int k = 0; k < econ.dim(i); ++k) {
        if (c[k] < b.lower[k] || c[k] > b.upper[k]) {
          throw ModelError("coordinate outside the box for player " +
                           std::to_string(i));
        }
      }
      x.points.push_back(DecisionPoint{-1, c});
    }
  }
  return x;
}

// All-Finite profile from its flat index, player 1 most significant.
inline GlobalDecision decision_from_flat(const Economy& econ, long flat) {
  GlobalDecision x;
  for (int i = 1; i <= econ.players(); ++i) {
    int l = static_cast<int>(flat / econ.stride(i)) % econ.label_count(i);
    x.points.push_back(point_from_label(econ, i, l));
  }
  return x;
}

inline long flat_index(const Economy& econ, const GlobalDecision& x) {
  long flat = 0;
  for (int i = 1; i <= econ.players(); ++i) {
    flat += x.points[i - 1].label * econ.stride(i);
  }
  return flat;
}

inline bool in_space(const Economy& econ, const GlobalDecision& x) {
  if (static_cast<int>(x.points.size()) != econ.players()) return false;
  for (int i = 1; i <= econ.players(); ++i) {
    const DecisionPoint& p = x.points[i - 1];
    if (static_cast<int>(p.coords.size()) != econ.dim(i)) return false;
    if (econ.finite(i)) {
      const FiniteSpace& fs = econ.finite_space(i);
      if (p.label < 0 || p.label >= static_cast<int>(fs.labels.size())) {
        return false;
      }
      if (fs.points[p.label] != p.coords) return false;
    } else {
      const BoxSpace& b = econ.box_space(i);
      for (int k = 0; k < econ.dim(i); ++k) {
        if (p.coords[k] < b.lower[k] || p.coords[k] > b.upper[k]) return false;
      }
    }
  }
  return true;
}

inline bool points_equal(const Economy& econ, int i, const DecisionPoint& a,
                         const DecisionPoint& b) {
  if (econ.finite(i)) return a.label == b.label;
  return a.coords == b.coords;
}

inline bool decisions_equal(const Economy& econ, const GlobalDecision& a,
                            const GlobalDecision& b) {
  for (int i = 1; i <= econ.players(); ++i) {
    if (!points_equal(econ, i, a.points[i - 1], b.points[i - 1])) return false;
  }
  return true;
}

// Lexicographic over (player 1, .., player N); labels for finite spaces,
// coordinates otherwise.
inline bool decision_less(const Economy& econ, const GlobalDecision& a,
                          const GlobalDecision& b) {
  for (int i = 1; i <= econ.players(); ++i) {
    const DecisionPoint& pa = a.points[i - 1];
    const DecisionPoint& pb = b.points[i - 1];
    if (econ.finite(i)) {
      if (pa.label != pb.label) return pa.label < pb.label;
    } else if (pa.coords != pb.coords) {
      return detail::lex_less_vec(pa.coords, pb.coords);
    }
  }
  return false;
}

inline double decision_distance(const GlobalDecision& a,
                                const GlobalDecision& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    d = std::max(d, detail::linf_dist(a.points[i].coords, b.points[i].coords));
  }
  return d;
}

inline std::string to_string(const Economy& econ, const GlobalDecision& x) {
  std::string out = "(";
  for (int i = 1; i <= econ.players(); ++i) {
    if (i > 1) out += ", ";
    const DecisionPoint& p = x.points[i - 1];
    if (econ.finite(i)) {
      out += econ.finite_space(i).labels[p.label];
    } else {
      out += '[';
      for (int k = 0; k < econ.dim(i); ++k) {
        if (k) out += ' ';
        out += format_double(p.coords[k]);
      }
      out += ']';
    }
  }
  return out + ")";
}

// ---- bindings and payoff evaluation ---------------------------------------

inline Binding make_binding(const Economy& econ, const GlobalDecision& x) {
  Binding b;
  b.offsets = {0};
  for (int i = 1; i <= econ.players(); ++i) {
    for (double v : x.points[i - 1].coords) b.x_vals.push_back(v);
    b.offsets.push_back(static_cast<int>(b.x_vals.size()));
  }
  return b;
}

// theta_i(x, y). The scratch binding must have been built from x by
// make_binding; its deviation slot is overwritten.
inline double payoff_value(const Economy& econ, int i, const GlobalDecision& x,
                           const DecisionPoint& y, Binding& scratch) {
  if (econ.has_table(i)) {
    if (y.label < 0) {
      throw ModelError("table payoff needs a labeled deviation");
    }
    return econ.table_value(i, x, y.label);
  }
  scratch.y_vals.assign(y.coords.begin(), y.coords.end());
  scratch.has_y = true;
  return evaluate(std::get<FormulaPayoff>(econ.payoff(i)).expr, scratch);
}

inline double payoff_value(const Economy& econ, int i, const GlobalDecision& x,
                           const DecisionPoint& y) {
  Binding b = make_binding(econ, x);
  return payoff_value(econ, i, x, y, b);
}

// ---- own-independence -----------------------------------------------------

// True when X_i never depends on player i's own components. Unconstrained
// and Shared constraints are own-independent by construction.
inline bool own_independent(const Economy& econ, int i) {
  const auto* bc = std::get_if<BoundConstraints>(&econ.constraint());
  if (!bc) return true;
  for (const BoundExpr& e : bc->entries) {
    if (e.player != i) continue;
    for (const Expr* ex : {&e.lower, &e.upper}) {
      for (const VarRef& v : free_variables(*ex)) {
        if (!v.deviation && v.player == i) return false;
      }
    }
  }
  return true;
}

inline bool own_independent(const Economy& econ) {
  for (int i = 1; i <= econ.players(); ++i) {
    if (!own_independent(econ, i)) return false;
  }
  return true;
}

// ---- feasibility ----------------------------------------------------------

namespace detail {

// Finite spaces compare exactly; continuous feasibility gets tol_feas slack.
inline double feas_tol(const Economy& econ, const Config& cfg) {
  return econ.all_finite() ? 0.0 : cfg.tol_feas;
}

// Binding of every player's coordinates except player i's, which are left
// unbound so stray references fail loudly.
inline Binding binding_without(const Economy& econ, const GlobalDecision& x,
                               int i) {
  Binding b;
  b.offsets = {0};
  for (int j = 1; j <= econ.players(); ++j) {
    if (j != i) {
      for (double v : x.points[j - 1].coords) b.x_vals.push_back(v);
    }
    b.offsets.push_back(static_cast<int>(b.x_vals.size()));
  }
  return b;
}

inline bool refs_player(const Expr& e, int i) {
  for (const VarRef& v : free_variables(e)) {
    if (!v.deviation && v.player == i) return true;
  }
  return false;
}

// c + sum_k a[k] * t_k over player i's coordinates t.
struct LinearForm {
  double c = 0.0;
  std::vector<double> a;

  bool constant() const {
    for (double v : a) {
      if (v != 0.0) return false;
    }
    return true;
  }
};

// Extracts a linear form of g in player i's coordinates with every other
// player bound, or nullopt when g is not affine in them.
inline std::optional<LinearForm> linearize(const Expr& e, const Economy& econ,
                                           int i, const Binding& others) {
  const int d = econ.dim(i);
  if (!refs_player(e, i)) {
    LinearForm lf;
    lf.a.assign(d, 0.0);
    lf.c = detail::eval_node(e.node(), others);
    return lf;
  }
  const Expr::Node& n = e.node();
  switch (n.kind) {
    case Expr::Kind::var: {
      LinearForm lf;
      lf.a.assign(d, 0.0);
      lf.a[n.var.coord] = 1.0;
      return lf;
    }
    case Expr::Kind::neg: {
      auto lf = linearize(n.args[0], econ, i, others);
      if (!lf) return std::nullopt;
      lf->c = -lf->c;
      for (double& v : lf->a) v = -v;
      return lf;
    }
    case Expr::Kind::binary: {
      if (n.op == Op::add || n.op == Op::sub) {
        auto l = linearize(n.args[0], econ, i, others);
        auto r = linearize(n.args[1], econ, i, others);
        if (!l || !r) return std::nullopt;
        double s = n.op == Op::add ? 1.0 : -1.0;
        l->c += s * r->c;
        for (int k = 0; k < d; ++k) l->a[k] += s * r->a[k];
        return l;
      }
      auto l = linearize(n.args[0], econ, i, others);
      auto r = linearize(n.args[1], econ, i, others);
      if (!l || !r) return std::nullopt;
      if (n.op == Op::mul) {
        if (l->constant()) std::swap(l, r);
        if (!r->constant()) return std::nullopt;
        l->c *= r->c;
        for (double& v : l->a) v *= r->c;
        return l;
      }
      // division: denominator must be a nonzero constant
      if (!r->constant() || r->c == 0.0) return std::nullopt;
      l->c /= r->c;
      for (double& v : l->a) v /= r->c;
      return l;
    }
    default:
      return std::nullopt;  // calls involving player i are not affine
  }
}

}  // namespace detail

// X_i(x): the set of decisions y_i admissible for player i while every other
// component of x stays fixed. For Box spaces under Shared constraints the
// result is exact for one-dimensional slices with affine inequalities; in
// higher dimensions or with non-affine inequalities it is a bounding box
// enclosure (grid-scanned at cfg.slice_grid points per axis in the
// non-affine case) and consumers re-check candidate points with
// is_feasible.
inline FeasibleSlice feasible_slice(const Economy& econ, int i,
                                    const GlobalDecision& x,
                                    const Config& cfg = {}) {
  const double tol = detail::feas_tol(econ, cfg);

  if (std::holds_alternative<Unconstrained>(econ.constraint())) {
    if (econ.finite(i)) {
      FinitePoints fp;
      for (int l = 0; l < econ.label_count(i); ++l) fp.labels.push_back(l);
      return FeasibleSlice(std::move(fp));
    }
    const BoxSpace& b = econ.box_space(i);
    return FeasibleSlice(SubBox{b.lower, b.upper, false});
  }

  if (const auto* sc = std::get_if<SharedConstraint>(&econ.constraint())) {
    if (econ.finite(i)) {
      Binding b = make_binding(econ, x);
      const int off = b.offsets[i - 1];
      FinitePoints fp;
      const FiniteSpace& fs = econ.finite_space(i);
      for (int l = 0; l < static_cast<int>(fs.labels.size()); ++l) {
        for (int k = 0; k < econ.dim(i); ++k) {
          b.x_vals[off + k] = fs.points[l][k];
        }
        bool ok = true;
        for (const Expr& g : sc->inequalities) {
          if (evaluate(g, b) > tol) {
            ok = false;
            break;
          }
        }
        if (ok) fp.labels.push_back(l);
      }
      return FeasibleSlice(std::move(fp));
    }

    const BoxSpace& box = econ.box_space(i);
    const int d = econ.dim(i);
    Binding others = detail::binding_without(econ, x, i);
    std::vector<detail::LinearForm> forms;
    bool affine = true;
    for (const Expr& g : sc->inequalities) {
      auto lf = detail::linearize(g, econ, i, others);
      if (!lf) {
        affine = false;
        break;
      }
      forms.push_back(*lf);
    }

    if (affine) {
      SubBox sb{box.lower, box.upper, false};
      for (const auto& lf : forms) {
        if (lf.constant()) {
          if (lf.c > 0.0) sb.empty = true;
          continue;
        }
        // Exact per-coordinate projection of {a.t + c <= 0} onto the box.
        for (int k = 0; k < d; ++k) {
          if (lf.a[k] == 0.0) continue;
          double rest = lf.c;
          for (int j = 0; j < d; ++j) {
            if (j == k) continue;
            rest += std::min(lf.a[j] * box.lower[j], lf.a[j] * box.upper[j]);
          }
          double bound = -rest / lf.a[k];
          if (lf.a[k] > 0.0) {
            sb.upper[k] = std::min(sb.upper[k], bound);
          } else {
            sb.lower[k] = std::max(sb.lower[k], bound);
          }
        }
      }
      return FeasibleSlice(std::move(sb));
    }

    // Non-affine: bounding box of the feasible points of a deterministic
    // grid over player i's box.
    Binding b = make_binding(econ, x);
    const int off = b.offsets[i - 1];
    const int grid = std::max(2, cfg.slice_grid);
    std::vector<int> counts(d);
    long total = 1;
    for (int k = 0; k < d; ++k) {
      counts[k] = box.upper[k] > box.lower[k] ? grid : 1;
      total *= counts[k];
    }
    SubBox sb;
    sb.lower.assign(d, 0.0);
    sb.upper.assign(d, 0.0);
    bool any = false;
    std::vector<int> ix(d, 0);
    std::vector<double> p(d);
    for (long nn = 0; nn < total; ++nn) {
      for (int k = 0; k < d; ++k) {
        p[k] = counts[k] == 1 ? box.lower[k]
               : ix[k] == counts[k] - 1
                   ? box.upper[k]
                   : box.lower[k] +
                         (box.upper[k] - box.lower[k]) * ix[k] / (counts[k] - 1);
        b.x_vals[off + k] = p[k];
      }
      bool ok = true;
      for (const Expr& g : sc->inequalities) {
        if (evaluate(g, b) > cfg.tol_feas) {
          ok = false;
          break;
        }
      }
      if (ok) {
        if (!any) {
          sb.lower = p;
          sb.upper = p;
          any = true;
        } else {
          for (int k = 0; k < d; ++k) {
            sb.lower[k] = std::min(sb.lower[k], p[k]);
            sb.upper[k] = std::max(sb.upper[k], p[k]);
          }
        }
      }
      for (int k = d - 1; k >= 0; --k) {
        if (++ix[k] < counts[k]) break;
        ix[k] = 0;
      }
    }
    sb.empty = !any;
    return FeasibleSlice(std::move(sb));
  }

  // Bound expressions: per-coordinate [lower(x), upper(x)] clamped to the
  // space.
  const auto& bc = std::get<BoundConstraints>(econ.constraint());
  Binding b = make_binding(econ, x);
  const int d = econ.dim(i);
  std::vector<double> lo(d), hi(d);
  if (econ.finite(i)) {
    lo.assign(d, -std::numeric_limits<double>::infinity());
    hi.assign(d, std::numeric_limits<double>::infinity());
  } else {
    lo = econ.box_space(i).lower;
    hi = econ.box_space(i).upper;
  }
  for (const BoundExpr& e : bc.entries) {
    if (e.player != i) continue;
    lo[e.coord] = std::max(lo[e.coord], evaluate(e.lower, b));
    hi[e.coord] = std::min(hi[e.coord], evaluate(e.upper, b));
  }
  if (econ.finite(i)) {
    const FiniteSpace& fs = econ.finite_space(i);
    FinitePoints fp;
    for (int l = 0; l < static_cast<int>(fs.labels.size()); ++l) {
      bool ok = true;
      for (int k = 0; k < d; ++k) {
        if (fs.points[l][k] < lo[k] - tol || fs.points[l][k] > hi[k] + tol) {
          ok = false;
          break;
        }
      }
      if (ok) fp.labels.push_back(l);
    }
    return FeasibleSlice(std::move(fp));
  }
  return FeasibleSlice(SubBox{std::move(lo), std::move(hi), false});
}

inline bool slice_contains(const Economy& econ, int i,
                           const FeasibleSlice& slice, const DecisionPoint& p,
                           double tol = 0.0) {
  if (slice.is_finite()) {
    const auto& ls = slice.finite().labels;
    return std::find(ls.begin(), ls.end(), p.label) != ls.end();
  }
  const SubBox& b = slice.box();
  if (b.empty) return false;
  for (std::size_t k = 0; k < b.lower.size(); ++k) {
    if (p.coords[k] < b.lower[k] - tol || p.coords[k] > b.upper[k] + tol) {
      return false;
    }
  }
  return true;
}

// x is feasible when x is in the product space and x_i lies in X_i(x) for
// every player. Under a Shared constraint this is exactly "every g_j(x)
// within tolerance".
inline bool is_feasible(const Economy& econ, const GlobalDecision& x,
                        const Config& cfg = {}) {
  if (!in_space(econ, x)) return false;
  const double tol = detail::feas_tol(econ, cfg);
  if (std::holds_alternative<Unconstrained>(econ.constraint())) return true;
  if (const auto* sc = std::get_if<SharedConstraint>(&econ.constraint())) {
    Binding b = make_binding(econ, x);
    for (const Expr& g : sc->inequalities) {
      if (evaluate(g, b) > tol) return false;
    }
    return true;
  }
  const auto& bc = std::get<BoundConstraints>(econ.constraint());
  Binding b = make_binding(econ, x);
  for (const BoundExpr& e : bc.entries) {
    double v = x.points[e.player - 1].coords[e.coord];
    if (v < evaluate(e.lower, b) - tol || v > evaluate(e.upper, b) + tol) {
      return false;
    }
  }
  return true;
}

// ---- validation -----------------------------------------------------------

struct ValidationReport {
  // Search for some x with x in X(x) was exhaustive (all-Finite) rather
  // than sampled.
  bool exhaustive = false;
  bool fixed_point_found = false;
  std::optional<GlobalDecision> fixed_point;
  long profiles_checked = 0;
  // Some probed profile left a player with an empty admissible set.
  bool empty_slice_found = false;
  std::string empty_slice_note;
  // Players whose bound expressions reference their own coordinates.
  std::vector<int> own_dependent_players;
  std::vector<std::string> warnings;
};

inline ValidationReport validate(const Economy& econ, long probe_budget,
                                 const Config& cfg = {}) {
  ValidationReport rep;
  for (int i = 1; i <= econ.players(); ++i) {
    if (!own_independent(econ, i)) rep.own_dependent_players.push_back(i);
  }

  auto probe = [&](const GlobalDecision& x) {
    ++rep.profiles_checked;
    if (!rep.fixed_point_found && is_feasible(econ, x, cfg)) {
      rep.fixed_point_found = true;
      rep.fixed_point = x;
    }
    if (!rep.empty_slice_found) {
      for (int i = 1; i <= econ.players(); ++i) {
        if (feasible_slice(econ, i, x, cfg).is_empty()) {
          rep.empty_slice_found = true;
          rep.empty_slice_note = "player " + std::to_string(i) +
                                 " has no admissible decision at " +
                                 to_string(econ, x);
          break;
        }
      }
    }
  };

  if (econ.all_finite()) {
    rep.exhaustive = true;
    for (long f = 0; f < econ.profile_count(); ++f) {
      probe(decision_from_flat(econ, f));
    }
    if (!rep.fixed_point_found) {
      rep.warnings.push_back("no feasible fixed point exists");
    }
  } else {
    int axes = 0;
    for (int i = 1; i <= econ.players(); ++i) {
      axes += econ.finite(i) ? 1 : econ.dim(i);
    }
    const unsigned long long offset = 1000 + cfg.seed * 7919ULL;
    for (long n = 0; n < probe_budget; ++n) {
      GlobalDecision x;
      int axis = 0;
      for (int i = 1; i <= econ.players(); ++i) {
        if (econ.finite(i)) {
          double u = halton(offset + n, halton_base(axis++));
          int l = std::min(econ.label_count(i) - 1,
                           static_cast<int>(u * econ.label_count(i)));
          x.points.push_back(point_from_label(econ, i, l));
        } else {
          const BoxSpace& b = econ.box_space(i);
          DecisionPoint p;
          p.label = -1;
          for (int k = 0; k < econ.dim(i); ++k) {
            double u = halton(offset + n, halton_base(axis++));
            p.coords.push_back(b.lower[k] + u * (b.upper[k] - b.lower[k]));
          }
          x.points.push_back(std::move(p));
        }
      }
      probe(x);
    }
    if (!rep.fixed_point_found) {
      rep.warnings.push_back("no feasible fixed point found within budget");
    }
  }
  return rep;
}

}  // namespace gnep
