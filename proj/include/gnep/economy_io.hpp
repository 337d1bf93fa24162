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

// JSON reading/writing for economies.
//
// Document shape:
//   { "players": N,
//     "spaces": [ {"type":"finite","labels":[..],"points":[[..],..]}
//               | {"type":"box","lower":[..],"upper":[..]} ],
//     "constraint": {"type":"unconstrained"}
//                 | {"type":"shared","inequalities":["expr",..]}
//                 | {"type":"bounds","entries":[{"player":i,"coord":k,
//                     "lower":"expr","upper":"expr"},..]},
//     "payoffs": [ {"type":"table","entries":[{"profile":[..],
//                    "deviation":"..","value":v},..]}
//                | {"type":"formula","expr":".."} ] }
//
// Reading is strict: unknown keys, missing fields, and type mismatches are
// errors that name the offending field. Writing is canonical: explicit
// points, fully parenthesized expressions, table entries in profile-major
// order, doubles at 17 significant digits.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gnep/economy.hpp"
#include "gnep/errors.hpp"
#include "json.hpp"

namespace gnep {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline void check_keys(const ordered_json& j,
                       std::initializer_list<const char*> allowed,
                       const std::string& ctx) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ModelError(ctx + ": unknown field '" + it.key() + "'");
  }
}

inline const ordered_json& need(const ordered_json& j, const char* key,
                                const std::string& ctx) {
  if (!j.is_object()) throw ModelError(ctx + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) {
    throw ModelError(ctx + ": missing field '" + key + "'");
  }
  return *it;
}

inline std::string need_string(const ordered_json& j, const char* key,
                               const std::string& ctx) {
  const ordered_json& v = need(j, key, ctx);
  if (!v.is_string()) {
    throw ModelError(ctx + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline double need_number(const ordered_json& j, const char* key,
                          const std::string& ctx) {
  const ordered_json& v = need(j, key, ctx);
  if (!v.is_number()) {
    throw ModelError(ctx + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

inline int need_int(const ordered_json& j, const char* key,
                    const std::string& ctx) {
  const ordered_json& v = need(j, key, ctx);
  if (!v.is_number_integer()) {
    throw ModelError(ctx + ": field '" + key + "' must be an integer");
  }
  return v.get<int>();
}

inline const ordered_json& need_array(const ordered_json& j, const char* key,
                                      const std::string& ctx) {
  const ordered_json& v = need(j, key, ctx);
  if (!v.is_array()) {
    throw ModelError(ctx + ": field '" + key + "' must be an array");
  }
  return v;
}

inline std::vector<double> number_list(const ordered_json& a,
                                       const std::string& ctx) {
  std::vector<double> out;
  for (const auto& v : a) {
    if (!v.is_number()) throw ModelError(ctx + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline Expr parse_expr_field(const std::string& text, const std::string& ctx) {
  try {
    return parse_expr(text);
  } catch (const ParseError& e) {
    throw ModelError(ctx + ": " + e.what());
  }
}

}  // namespace detail

// ---- reading --------------------------------------------------------------

inline Economy economy_from_json(const ordered_json& j) {
  using detail::check_keys;
  using detail::need;
  using detail::need_array;
  using detail::need_int;
  using detail::need_number;
  using detail::need_string;

  if (!j.is_object()) throw ModelError("economy: expected a JSON object");
  check_keys(j, {"players", "spaces", "constraint", "payoffs"}, "economy");
  const int n = need_int(j, "players", "economy");
  if (n < 1) throw ModelError("economy: 'players' must be at least 1");

  const ordered_json& jspaces = need_array(j, "spaces", "economy");
  if (static_cast<int>(jspaces.size()) != n) {
    throw ModelError("economy: 'spaces' must list one space per player");
  }
  std::vector<DecisionSpace> spaces;
  for (int i = 1; i <= n; ++i) {
    const ordered_json& js = jspaces[i - 1];
    const std::string ctx = "spaces[" + std::to_string(i - 1) + "]";
    const std::string type = need_string(js, "type", ctx);
    if (type == "finite") {
      check_keys(js, {"type", "labels", "points"}, ctx);
      FiniteSpace fs;
      for (const auto& l : need_array(js, "labels", ctx)) {
        if (!l.is_string()) throw ModelError(ctx + ": labels must be strings");
        fs.labels.push_back(l.get<std::string>());
      }
      if (js.contains("points")) {
        for (const auto& p : need_array(js, "points", ctx)) {
          if (!p.is_array()) {
            throw ModelError(ctx + ": each point must be an array");
          }
          fs.points.push_back(detail::number_list(p, ctx + ".points"));
        }
      }
      spaces.emplace_back(std::move(fs));
    } else if (type == "box") {
      check_keys(js, {"type", "lower", "upper"}, ctx);
      BoxSpace bs;
      bs.lower = detail::number_list(need_array(js, "lower", ctx), ctx);
      bs.upper = detail::number_list(need_array(js, "upper", ctx), ctx);
      spaces.emplace_back(std::move(bs));
    } else {
      throw ModelError(ctx + ": unknown space type '" + type + "'");
    }
  }

  const ordered_json& jc = need(j, "constraint", "economy");
  const std::string ctype = need_string(jc, "type", "constraint");
  ConstraintSpec constraint;
  if (ctype == "unconstrained") {
    check_keys(jc, {"type"}, "constraint");
    constraint = Unconstrained{};
  } else if (ctype == "shared") {
    check_keys(jc, {"type", "inequalities"}, "constraint");
    SharedConstraint sc;
    const ordered_json& ineqs = need_array(jc, "inequalities", "constraint");
    for (std::size_t k = 0; k < ineqs.size(); ++k) {
      if (!ineqs[k].is_string()) {
        throw ModelError("constraint: inequalities must be strings");
      }
      sc.inequalities.push_back(detail::parse_expr_field(
          ineqs[k].get<std::string>(),
          "constraint.inequalities[" + std::to_string(k) + "]"));
    }
    constraint = std::move(sc);
  } else if (ctype == "bounds") {
    check_keys(jc, {"type", "entries"}, "constraint");
    BoundConstraints bc;
    const ordered_json& entries = need_array(jc, "entries", "constraint");
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string ctx = "constraint.entries[" + std::to_string(k) + "]";
      const ordered_json& je = entries[k];
      check_keys(je, {"player", "coord", "lower", "upper"}, ctx);
      BoundExpr be;
      be.player = need_int(je, "player", ctx);
      be.coord = need_int(je, "coord", ctx);
      be.lower = detail::parse_expr_field(need_string(je, "lower", ctx),
                                          ctx + ".lower");
      be.upper = detail::parse_expr_field(need_string(je, "upper", ctx),
                                          ctx + ".upper");
      bc.entries.push_back(std::move(be));
    }
    constraint = std::move(bc);
  } else {
    throw ModelError("constraint: unknown type '" + ctype + "'");
  }

  const ordered_json& jpay = need_array(j, "payoffs", "economy");
  if (static_cast<int>(jpay.size()) != n) {
    throw ModelError("economy: 'payoffs' must list one payoff per player");
  }
  std::vector<Payoff> payoffs;
  for (int i = 1; i <= n; ++i) {
    const ordered_json& jp = jpay[i - 1];
    const std::string ctx = "payoffs[" + std::to_string(i - 1) + "]";
    const std::string type = need_string(jp, "type", ctx);
    if (type == "table") {
      check_keys(jp, {"type", "entries"}, ctx);
      TablePayoff tp;
      const ordered_json& entries = need_array(jp, "entries", ctx);
      for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string ectx = ctx + ".entries[" + std::to_string(k) + "]";
        const ordered_json& je = entries[k];
        check_keys(je, {"profile", "deviation", "value"}, ectx);
        TableEntry e;
        for (const auto& l : need_array(je, "profile", ectx)) {
          if (!l.is_string()) {
            throw ModelError(ectx + ": profile labels must be strings");
          }
          e.profile.push_back(l.get<std::string>());
        }
        e.deviation = need_string(je, "deviation", ectx);
        e.value = need_number(je, "value", ectx);
        tp.entries.push_back(std::move(e));
      }
      payoffs.emplace_back(std::move(tp));
    } else if (type == "formula") {
      check_keys(jp, {"type", "expr"}, ctx);
      payoffs.emplace_back(FormulaPayoff{detail::parse_expr_field(
          need_string(jp, "expr", ctx), ctx + ".expr")});
    } else {
      throw ModelError(ctx + ": unknown payoff type '" + type + "'");
    }
  }

  return Economy(std::move(spaces), std::move(constraint), std::move(payoffs));
}

// Parses JSON text; syntax errors report 1-based line and column.
inline Economy load_economy(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    if (byte > text.size()) byte = text.size();
    std::size_t line = 1, col = 1;
    for (std::size_t p = 0; p < byte; ++p) {
      if (text[p] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error (line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ")",
                     byte);
  }
  return economy_from_json(j);
}

inline Economy load_economy_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return load_economy(ss.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

// ---- writing --------------------------------------------------------------

inline ordered_json economy_to_json(const Economy& econ) {
  ordered_json j;
  j["players"] = econ.players();
  ordered_json spaces = ordered_json::array();
  for (int i = 1; i <= econ.players(); ++i) {
    ordered_json js;
    if (econ.finite(i)) {
      const FiniteSpace& fs = econ.finite_space(i);
      js["type"] = "finite";
      js["labels"] = fs.labels;
      js["points"] = fs.points;
    } else {
      const BoxSpace& bs = econ.box_space(i);
      js["type"] = "box";
      js["lower"] = bs.lower;
      js["upper"] = bs.upper;
    }
    spaces.push_back(std::move(js));
  }
  j["spaces"] = std::move(spaces);

  ordered_json jc;
  if (std::holds_alternative<Unconstrained>(econ.constraint())) {
    jc["type"] = "unconstrained";
  } else if (const auto* sc =
                 std::get_if<SharedConstraint>(&econ.constraint())) {
    jc["type"] = "shared";
    ordered_json ineqs = ordered_json::array();
    for (const Expr& g : sc->inequalities) ineqs.push_back(to_string(g));
    jc["inequalities"] = std::move(ineqs);
  } else {
    const auto& bc = std::get<BoundConstraints>(econ.constraint());
    jc["type"] = "bounds";
    std::vector<const BoundExpr*> order;
    for (const BoundExpr& e : bc.entries) order.push_back(&e);
    std::sort(order.begin(), order.end(),
              [](const BoundExpr* a, const BoundExpr* b) {
                if (a->player != b->player) return a->player < b->player;
                return a->coord < b->coord;
              });
    ordered_json entries = ordered_json::array();
    for (const BoundExpr* e : order) {
      ordered_json je;
      je["player"] = e->player;
      je["coord"] = e->coord;
      je["lower"] = to_string(e->lower);
      je["upper"] = to_string(e->upper);
      entries.push_back(std::move(je));
    }
    jc["entries"] = std::move(entries);
  }
  j["constraint"] = std::move(jc);

  ordered_json payoffs = ordered_json::array();
  for (int i = 1; i <= econ.players(); ++i) {
    ordered_json jp;
    if (econ.has_table(i)) {
      jp["type"] = "table";
      ordered_json entries = ordered_json::array();
      for (long f = 0; f < econ.profile_count(); ++f) {
        GlobalDecision x = decision_from_flat(econ, f);
        ordered_json profile = ordered_json::array();
        for (int p = 1; p <= econ.players(); ++p) {
          profile.push_back(
              econ.finite_space(p).labels[x.points[p - 1].label]);
        }
        for (int dev = 0; dev < econ.label_count(i); ++dev) {
          ordered_json je;
          je["profile"] = profile;
          je["deviation"] = econ.finite_space(i).labels[dev];
          je["value"] = econ.table_value(i, x, dev);
          entries.push_back(std::move(je));
        }
      }
      jp["entries"] = std::move(entries);
    } else {
      jp["type"] = "formula";
      jp["expr"] = to_string(std::get<FormulaPayoff>(econ.payoff(i)).expr);
    }
    payoffs.push_back(std::move(jp));
  }
  j["payoffs"] = std::move(payoffs);
  return j;
}

// ---- serialization --------------------------------------------------------

namespace detail {

inline void write_json_value(std::string& out, const ordered_json& j,
                             int indent, int depth) {
  auto pad = [&](int d) { out.append(static_cast<std::size_t>(d) * indent, ' '); };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        out += ordered_json(it.key()).dump();
        out += ": ";
        write_json_value(out, it.value(), indent, depth + 1);
      }
      out += '\n';
      pad(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& v : j) {
        if (v.is_structured()) {
          scalars = false;
          break;
        }
      }
      if (scalars) {
        out += '[';
        bool first = true;
        for (const auto& v : j) {
          if (!first) out += ", ";
          first = false;
          write_json_value(out, v, indent, depth);
        }
        out += ']';
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        pad(depth + 1);
        write_json_value(out, v, indent, depth + 1);
      }
      out += '\n';
      pad(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::string:
      out += j.dump();
      return;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::json::value_t::number_integer:
    case nlohmann::json::value_t::number_unsigned:
      out += j.dump();
      return;
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += "null";
      return;
  }
}

}  // namespace detail

// Deterministic writer: fixed field order (insertion order), scalar arrays
// on one line, doubles at 17 significant digits.
inline std::string json_to_string(const ordered_json& j, int indent = 2) {
  std::string out;
  detail::write_json_value(out, j, indent, 0);
  out += '\n';
  return out;
}

inline std::string save_economy(const Economy& econ) {
  return json_to_string(economy_to_json(econ));
}

}  // namespace gnep
