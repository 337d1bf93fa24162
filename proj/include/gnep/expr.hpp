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

// Expression trees for payoff formulas and constraint inequalities.
//
// Grammar (whitespace-insensitive, left-associative, unary minus binds
// tighter than * and /):
//   expr   = term { ("+" | "-") term }
//   term   = factor { ("*" | "/") factor }
//   factor = [ "-" ] atom
//   atom   = number | var | func "(" expr { "," expr } ")" | "(" expr ")"
//   var    = "x" "[" int "]" "[" int "]" | "y" "[" int "]"
//   func   = min | max | abs | pow | exp | log | sqrt
//
// x[i][k] is coordinate k (0-based) of player i (1-based) in the global
// decision; y[k] is coordinate k of the bound deviation. Trees are immutable
// and share subterms; evaluation is pure and safe to call concurrently.

#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gnep/errors.hpp"

namespace gnep {

// Shortest-faithful decimal form: round-trips through the parser to the
// identical double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

enum class Op { add, sub, mul, div };
enum class Func { fmin, fmax, fabs, fpow, fexp, flog, fsqrt };

inline int func_arity(Func f) {
  switch (f) {
    case Func::fmin:
    case Func::fmax:
    case Func::fpow:
      return 2;
    default:
      return 1;
  }
}

inline const char* func_name(Func f) {
  switch (f) {
    case Func::fmin: return "min";
    case Func::fmax: return "max";
    case Func::fabs: return "abs";
    case Func::fpow: return "pow";
    case Func::fexp: return "exp";
    case Func::flog: return "log";
    case Func::fsqrt: return "sqrt";
  }
  return "?";
}

// A variable occurrence. deviation=false is x[player][coord],
// deviation=true is y[coord] (player unused, kept 0).
struct VarRef {
  bool deviation = false;
  int player = 0;
  int coord = 0;

  friend bool operator<(const VarRef& a, const VarRef& b) {
    if (a.deviation != b.deviation) return !a.deviation;
    if (a.player != b.player) return a.player < b.player;
    return a.coord < b.coord;
  }
  friend bool operator==(const VarRef& a, const VarRef& b) {
    return a.deviation == b.deviation && a.player == b.player &&
           a.coord == b.coord;
  }
};

inline std::string to_string(const VarRef& v) {
  if (v.deviation) return "y[" + std::to_string(v.coord) + "]";
  return "x[" + std::to_string(v.player) + "][" + std::to_string(v.coord) +
         "]";
}

// Values for the variables an expression may reference. Global-decision
// coordinates are stored flat; player i (1-based) owns
// x_vals[offsets[i-1] .. offsets[i]). The deviation vector is optional.
struct Binding {
  std::vector<int> offsets{0};
  std::vector<double> x_vals;
  std::vector<double> y_vals;
  bool has_y = false;

  int players() const { return static_cast<int>(offsets.size()) - 1; }
  int dim(int player) const { return offsets[player] - offsets[player - 1]; }

  double x(int player, int coord) const {
    if (player < 1 || player > players() || coord < 0 ||
        coord >= dim(player)) {
      throw EvalError("unbound variable x[" + std::to_string(player) + "][" +
                      std::to_string(coord) + "]");
    }
    return x_vals[offsets[player - 1] + coord];
  }
  double y(int coord) const {
    if (!has_y || coord < 0 || coord >= static_cast<int>(y_vals.size())) {
      throw EvalError("unbound variable y[" + std::to_string(coord) + "]");
    }
    return y_vals[coord];
  }

  void set_y(std::vector<double> coords) {
    y_vals = std::move(coords);
    has_y = true;
  }
};

class Expr {
 public:
  enum class Kind { number, var, neg, binary, call };

  struct Node {
    Kind kind;
    double value = 0.0;       // number
    VarRef var;               // var
    Op op = Op::add;          // binary
    Func func = Func::fmin;   // call
    std::vector<Expr> args;   // neg: 1, binary: 2, call: arity
  };

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  bool valid() const { return node_ != nullptr; }
  const Node& node() const {
    if (!node_) throw Error("empty expression");
    return *node_;
  }

  static Expr number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::number;
    n->value = v;
    return Expr(std::move(n));
  }
  static Expr variable(VarRef v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::var;
    n->var = v;
    return Expr(std::move(n));
  }
  static Expr negate(Expr e) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::neg;
    n->args.push_back(std::move(e));
    return Expr(std::move(n));
  }
  static Expr binary(Op op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::binary;
    n->op = op;
    n->args.push_back(std::move(lhs));
    n->args.push_back(std::move(rhs));
    return Expr(std::move(n));
  }
  static Expr call(Func f, std::vector<Expr> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::call;
    n->func = f;
    n->args = std::move(args);
    return Expr(std::move(n));
  }

 private:
  std::shared_ptr<const Node> node_;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr run() {
    skip_ws();
    if (pos_ == text_.size()) fail("empty expression");
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("syntax error: " + what, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) fail(std::string("expected '") + c + "' (" + what + ")");
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (eat('+')) {
        lhs = Expr::binary(Op::add, std::move(lhs), parse_term());
      } else if (eat('-')) {
        lhs = Expr::binary(Op::sub, std::move(lhs), parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        lhs = Expr::binary(Op::mul, std::move(lhs), parse_factor());
      } else if (eat('/')) {
        lhs = Expr::binary(Op::div, std::move(lhs), parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    if (eat('-')) return Expr::negate(parse_atom());
    return parse_atom();
  }

  Expr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')', "closing parenthesis");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    if (c == '\0') fail("expected a value, found end of input");
    fail(std::string("expected a value, found '") + c + "'");
  }

  Expr parse_number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      } else {
        pos_ = mark;  // "2e" is the literal 2 followed by junk
      }
    }
    std::string tok(text_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
      pos_ = start;
      fail("numeric literal out of range");
    }
    return Expr::number(v);
  }

  int parse_index(const char* what) {
    expect('[', what);
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (pos_ == start) fail(std::string("expected an integer ") + what);
    long v = std::strtol(std::string(text_.substr(start, pos_ - start)).c_str(),
                         nullptr, 10);
    expect(']', what);
    return static_cast<int>(v);
  }

  Expr parse_name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    if (name == "x") {
      VarRef v;
      v.deviation = false;
      v.player = parse_index("player index");
      v.coord = parse_index("coordinate index");
      if (v.player < 1) {
        pos_ = start;
        fail("player index must be >= 1");
      }
      return Expr::variable(v);
    }
    if (name == "y") {
      VarRef v;
      v.deviation = true;
      v.coord = parse_index("coordinate index");
      return Expr::variable(v);
    }
    Func f;
    if (name == "min") f = Func::fmin;
    else if (name == "max") f = Func::fmax;
    else if (name == "abs") f = Func::fabs;
    else if (name == "pow") f = Func::fpow;
    else if (name == "exp") f = Func::fexp;
    else if (name == "log") f = Func::flog;
    else if (name == "sqrt") f = Func::fsqrt;
    else {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    expect('(', "argument list");
    std::vector<Expr> args;
    args.push_back(parse_expr());
    while (eat(',')) args.push_back(parse_expr());
    expect(')', "argument list");
    if (static_cast<int>(args.size()) != func_arity(f)) {
      fail(std::string(func_name(f)) + " takes " +
           std::to_string(func_arity(f)) + " argument(s), got " +
           std::to_string(args.size()));
    }
    return Expr::call(f, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline double eval_node(const Expr::Node& n, const Binding& b) {
  switch (n.kind) {
    case Expr::Kind::number:
      return n.value;
    case Expr::Kind::var:
      return n.var.deviation ? b.y(n.var.coord) : b.x(n.var.player, n.var.coord);
    case Expr::Kind::neg:
      return -eval_node(n.args[0].node(), b);
    case Expr::Kind::binary: {
      double l = eval_node(n.args[0].node(), b);
      double r = eval_node(n.args[1].node(), b);
      switch (n.op) {
        case Op::add: return l + r;
        case Op::sub: return l - r;
        case Op::mul: return l * r;
        case Op::div:
          if (r == 0.0) throw EvalError("division by zero");
          return l / r;
      }
      return 0.0;
    }
    case Expr::Kind::call: {
      double a = eval_node(n.args[0].node(), b);
      switch (n.func) {
        case Func::fmin: return std::fmin(a, eval_node(n.args[1].node(), b));
        case Func::fmax: return std::fmax(a, eval_node(n.args[1].node(), b));
        case Func::fabs: return std::fabs(a);
        case Func::fpow: {
          double e = eval_node(n.args[1].node(), b);
          double v = std::pow(a, e);
          if (std::isnan(v)) throw EvalError("domain error in pow");
          return v;
        }
        case Func::fexp: return std::exp(a);
        case Func::flog:
          if (a <= 0.0) throw EvalError("domain error in log");
          return std::log(a);
        case Func::fsqrt:
          if (a < 0.0) throw EvalError("domain error in sqrt");
          return std::sqrt(a);
      }
      return 0.0;
    }
  }
  return 0.0;
}

inline void collect_vars(const Expr::Node& n, std::set<VarRef>& out) {
  if (n.kind == Expr::Kind::var) {
    out.insert(n.var);
    return;
  }
  for (const Expr& a : n.args) collect_vars(a.node(), out);
}

inline void print_node(const Expr::Node& n, std::string& out) {
  switch (n.kind) {
    case Expr::Kind::number:
      out += format_double(n.value);
      return;
    case Expr::Kind::var:
      out += to_string(n.var);
      return;
    case Expr::Kind::neg:
      out += "(-";
      print_node(n.args[0].node(), out);
      out += ')';
      return;
    case Expr::Kind::binary: {
      const char* op = n.op == Op::add   ? " + "
                       : n.op == Op::sub ? " - "
                       : n.op == Op::mul ? " * "
                                         : " / ";
      out += '(';
      print_node(n.args[0].node(), out);
      out += op;
      print_node(n.args[1].node(), out);
      out += ')';
      return;
    }
    case Expr::Kind::call:
      out += func_name(n.func);
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print_node(n.args[i].node(), out);
      }
      out += ')';
      return;
  }
}

}  // namespace detail

inline Expr parse_expr(std::string_view text) {
  return detail::ExprParser(text).run();
}

// Evaluates against the binding. Intermediate overflow to infinity
// propagates; a non-finite final value is an error.
inline double evaluate(const Expr& e, const Binding& b) {
  double v = detail::eval_node(e.node(), b);
  if (!std::isfinite(v)) throw EvalError("non-finite result");
  return v;
}

inline std::set<VarRef> free_variables(const Expr& e) {
  std::set<VarRef> out;
  detail::collect_vars(e.node(), out);
  return out;
}

// Canonical form: fully parenthesized, single spaces around binary
// operators. parse(to_string(e)) evaluates identically to e.
inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print_node(e.node(), out);
  return out;
}

}  // namespace gnep
