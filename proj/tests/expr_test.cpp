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

#include "gnep/expr.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace gnep {
namespace {

Binding binding_of(std::vector<std::vector<double>> x) {
  Binding b;
  b.offsets = {0};
  for (auto& p : x) {
    for (double v : p) b.x_vals.push_back(v);
    b.offsets.push_back(static_cast<int>(b.x_vals.size()));
  }
  return b;
}

Binding binding_of(std::vector<std::vector<double>> x, std::vector<double> y) {
  Binding b = binding_of(std::move(x));
  b.set_y(std::move(y));
  return b;
}

TEST(ExprParse, PayoffFormulaShape) {
  Expr e = parse_expr("y[0]*(2 - y[0] - x[2][0])");
  EXPECT_EQ(e.node().kind, Expr::Kind::binary);
  EXPECT_EQ(e.node().op, Op::mul);
  EXPECT_EQ(to_string(e), "(y[0] * ((2 - y[0]) - x[2][0]))");
}

TEST(ExprParse, MinCall) {
  Expr e = parse_expr("min(x[1][0], x[2][0])");
  EXPECT_EQ(e.node().kind, Expr::Kind::call);
  EXPECT_EQ(e.node().func, Func::fmin);
  ASSERT_EQ(e.node().args.size(), 2u);
}

TEST(ExprParse, ErrorAtEndOfInput) {
  const std::string text = "x[1][0] + ";
  try {
    parse_expr(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.position(), text.size());
  }
}

TEST(ExprParse, ArityErrors) {
  EXPECT_THROW(parse_expr("min(x[1][0])"), ParseError);
  EXPECT_THROW(parse_expr("sqrt(1, 2)"), ParseError);
  EXPECT_THROW(parse_expr("pow(2)"), ParseError);
}

TEST(ExprParse, UnknownIdentifier) {
  EXPECT_THROW(parse_expr("foo(2)"), ParseError);
  EXPECT_THROW(parse_expr("z[0]"), ParseError);
}

TEST(ExprParse, UnbalancedParens) {
  EXPECT_THROW(parse_expr("((1 + 2)"), ParseError);
  EXPECT_THROW(parse_expr("abs()"), ParseError);
}

TEST(ExprParse, EmptyInput) {
  EXPECT_THROW(parse_expr(""), ParseError);
  EXPECT_THROW(parse_expr("   "), ParseError);
}

TEST(ExprParse, LiteralOutOfRange) {
  EXPECT_THROW(parse_expr("1e999"), ParseError);
}

TEST(ExprParse, WhitespaceInsensitive) {
  Expr a = parse_expr("y[0]*(2-y[0]-x[2][0])");
  Expr b = parse_expr("  y[ 0 ] * ( 2 - y[0] -\tx[ 2 ][ 0 ] )  ");
  EXPECT_EQ(to_string(a), to_string(b));
}

TEST(ExprParse, PrecedenceAndUnaryMinus) {
  Binding b = binding_of({{0.0}});
  EXPECT_EQ(evaluate(parse_expr("1 - 2 - 3"), b), -4.0);
  EXPECT_EQ(evaluate(parse_expr("2 + 3 * 4"), b), 14.0);
  EXPECT_EQ(evaluate(parse_expr("-2*3"), b), -6.0);
  EXPECT_EQ(evaluate(parse_expr("2*-3"), b), -6.0);
  EXPECT_EQ(evaluate(parse_expr("2--3"), b), 5.0);
  EXPECT_EQ(evaluate(parse_expr("8/4/2"), b), 1.0);
  EXPECT_EQ(to_string(parse_expr("-2*3")), "((-2) * 3)");
}

TEST(ExprEval, PayoffFormulaValue) {
  // 0.5 * (2 - 0.5 - 0.25) = 0.625, exactly representable.
  Expr e = parse_expr("y[0]*(2 - y[0] - x[2][0])");
  Binding b = binding_of({{1.0}, {0.25}}, {0.5});
  EXPECT_EQ(evaluate(e, b), 0.625);
}

TEST(ExprEval, DomainErrors) {
  Binding b = binding_of({{1.0}}, {0.0});
  EXPECT_THROW(evaluate(parse_expr("log(y[0])"), b), EvalError);
  EXPECT_THROW(evaluate(parse_expr("sqrt(y[0] - 1)"), b), EvalError);
  EXPECT_THROW(evaluate(parse_expr("1/y[0]"), b), EvalError);
  EXPECT_THROW(evaluate(parse_expr("pow(-1, 0.5)"), b), EvalError);
}

TEST(ExprEval, UnboundVariable) {
  Binding b = binding_of({{1.0}, {2.0}});
  EXPECT_THROW(evaluate(parse_expr("x[3][0]"), b), EvalError);
  EXPECT_THROW(evaluate(parse_expr("x[1][1]"), b), EvalError);
  // No deviation bound at all.
  EXPECT_THROW(evaluate(parse_expr("y[0]"), b), EvalError);
}

TEST(ExprEval, NonFiniteFinalValueIsError) {
  Binding b = binding_of({{1.0}});
  EXPECT_THROW(evaluate(parse_expr("exp(1000)"), b), EvalError);
  // Overflow in an intermediate may cancel without raising.
  EXPECT_EQ(evaluate(parse_expr("1/(1 + exp(1000))"), b), 0.0);
}

TEST(ExprEval, ScientificLiterals) {
  Binding b = binding_of({{0.0}});
  EXPECT_EQ(evaluate(parse_expr("2e8"), b), 2e8);
  EXPECT_EQ(evaluate(parse_expr("2.5E-3"), b), 2.5e-3);
  EXPECT_EQ(evaluate(parse_expr("1.25e+2"), b), 125.0);
}

TEST(ExprVars, FreeVariables) {
  auto vars = free_variables(parse_expr("pow(x[1][1], 2) + y[0]"));
  ASSERT_EQ(vars.size(), 2u);
  EXPECT_TRUE(vars.count(VarRef{false, 1, 1}));
  EXPECT_TRUE(vars.count(VarRef{true, 0, 0}));

  vars = free_variables(parse_expr("abs(x[2][0] - x[1][0])"));
  ASSERT_EQ(vars.size(), 2u);
  EXPECT_TRUE(vars.count(VarRef{false, 1, 0}));
  EXPECT_TRUE(vars.count(VarRef{false, 2, 0}));

  EXPECT_TRUE(free_variables(parse_expr("3.5")).empty());
}

// ---- round-trip property -------------------------------------------------

std::string random_atom(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth <= 0 || pick(4) == 0) {
    switch (pick(5)) {
      case 0: return std::to_string(pick(10));
      case 1: return std::to_string(pick(9)) + "." + std::to_string(pick(10)) +
                     std::to_string(pick(10));
      case 2: return std::to_string(1 + pick(9)) + "e-" + std::to_string(pick(3));
      case 3: return "x[" + std::to_string(1 + pick(3)) + "][" +
                     std::to_string(pick(2)) + "]";
      default: return "y[" + std::to_string(pick(2)) + "]";
    }
  }
  switch (pick(7)) {
    case 0: {
      const char* ops[] = {" + ", " - ", " * ", " / "};
      return "(" + random_atom(rng, depth - 1) + ops[pick(4)] +
             random_atom(rng, depth - 1) + ")";
    }
    case 1: return "(-" + random_atom(rng, depth - 1) + ")";
    case 2: return "min(" + random_atom(rng, depth - 1) + ", " +
                   random_atom(rng, depth - 1) + ")";
    case 3: return "max(" + random_atom(rng, depth - 1) + ", " +
                   random_atom(rng, depth - 1) + ")";
    case 4: return "abs(" + random_atom(rng, depth - 1) + ")";
    case 5: return "pow(" + random_atom(rng, depth - 1) + ", " +
                   std::to_string(pick(3)) + ")";
    default: return pick(2) ? "log(" + random_atom(rng, depth - 1) + ")"
                            : "sqrt(" + random_atom(rng, depth - 1) + ")";
  }
}

// Outcome of an evaluation: either a bit-exact value or an error.
std::pair<bool, std::uint64_t> outcome(const Expr& e, const Binding& b) {
  try {
    return {true, std::bit_cast<std::uint64_t>(evaluate(e, b))};
  } catch (const EvalError&) {
    return {false, 0};
  }
}

TEST(ExprRoundTrip, PrintedFormEvaluatesIdentically) {
  std::mt19937_64 rng(20260822);
  for (int i = 0; i < 100; ++i) {
    Expr e = parse_expr(random_atom(rng, 4));
    Expr back = parse_expr(to_string(e));
    EXPECT_EQ(to_string(e), to_string(back));
    for (int j = 0; j < 100; ++j) {
      Binding b;
      b.offsets = {0, 2, 4, 6};
      for (int k = 0; k < 6; ++k) {
        b.x_vals.push_back((static_cast<double>(rng() % 8001) - 4000.0) / 1000.0);
      }
      b.set_y({(static_cast<double>(rng() % 8001) - 4000.0) / 1000.0,
               (static_cast<double>(rng() % 8001) - 4000.0) / 1000.0});
      EXPECT_EQ(outcome(e, b), outcome(back, b)) << to_string(e);
    }
  }
}

TEST(ExprEval, PureAndReentrant) {
  Expr e = parse_expr("pow(x[1][0], 2) + exp(y[0]) * x[2][0]");
  Binding b = binding_of({{1.5}, {-0.75}}, {0.25});
  const std::uint64_t first = std::bit_cast<std::uint64_t>(evaluate(e, b));
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(evaluate(e, b)), first);
  }

  std::vector<std::thread> workers;
  std::vector<int> ok(4, 0);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      int good = 0;
      for (int i = 0; i < 1000; ++i) {
        if (std::bit_cast<std::uint64_t>(evaluate(e, b)) == first) ++good;
      }
      ok[t] = good;
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 0; t < 4; ++t) EXPECT_EQ(ok[t], 1000);
}

}  // namespace
}  // namespace gnep
