// Copyright 2026 The codeattack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "codeattack/syntax/snippet.hpp"

namespace codeattack {

enum class TransformKind : std::uint8_t {
  AddLog,
  LoopExchange,
  SwapIndependentStatements,
  ReorderBinaryCondition,
  SwitchToIf,
  AddTryCatch,
  AddDeadCode,
  BoolFlipPropagate,
};

inline constexpr std::array<TransformKind, 8> kTransformKinds = {
    TransformKind::AddLog,
    TransformKind::LoopExchange,
    TransformKind::SwapIndependentStatements,
    TransformKind::ReorderBinaryCondition,
    TransformKind::SwitchToIf,
    TransformKind::AddTryCatch,
    TransformKind::AddDeadCode,
    TransformKind::BoolFlipPropagate};

inline std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::AddLog: return "AddLog";
    case TransformKind::LoopExchange: return "LoopExchange";
    case TransformKind::SwapIndependentStatements:
      return "SwapIndependentStatements";
    case TransformKind::ReorderBinaryCondition: return "ReorderBinaryCondition";
    case TransformKind::SwitchToIf: return "SwitchToIf";
    case TransformKind::AddTryCatch: return "AddTryCatch";
    case TransformKind::AddDeadCode: return "AddDeadCode";
    case TransformKind::BoolFlipPropagate: return "BoolFlipPropagate";
  }
  return "AddLog";
}

struct TransformedVariant {
  std::string code;
  std::vector<TransformKind> applied;
  std::uint64_t seed = 0;
};

/// A rewrite produced unparseable code.
class TransformError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Byte-range replacement; an empty range is an insertion.
struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string text;
};

inline std::string apply_edits(const std::string& source,
                               std::vector<Edit> edits) {
  std::stable_sort(edits.begin(), edits.end(),
                   [](const Edit& a, const Edit& b) {
                     if (a.begin != b.begin) return a.begin < b.begin;
                     return a.end < b.end;
                   });
  std::string out;
  out.reserve(source.size() + 64);
  std::size_t cursor = 0;
  for (const auto& e : edits) {
    if (e.begin < cursor) throw TransformError("overlapping edits");
    out.append(source, cursor, e.begin - cursor);
    out.append(e.text);
    cursor = e.end;
  }
  out.append(source, cursor, std::string::npos);
  return out;
}

namespace detail {

using syntax::ExprKind;
using syntax::kNone;
using syntax::StmtKind;
using syntax::TokenRange;

using Site = std::vector<Edit>;

/// Shared lookups over one snippet.
class RewriteContext {
 public:
  explicit RewriteContext(const CodeSnippet& s) : s_(s) {
    const auto& st = s.tree().statements;
    for (const auto& stmt : st) {
      if (stmt.kind == StmtKind::Block || stmt.kind == StmtKind::Switch) {
        for (auto c : stmt.children) list_members_.insert(c);
      }
    }
    for (const auto& d : s.tree().declarations) {
      declared_.insert(std::string(s.sig(d.name)));
    }
  }

  [[nodiscard]] const CodeSnippet& snippet() const { return s_; }
  [[nodiscard]] const syntax::Statement& stmt(std::size_t i) const {
    return s_.tree().statements[i];
  }
  [[nodiscard]] const syntax::Expression& expr(std::size_t i) const {
    return s_.tree().expressions[i];
  }
  [[nodiscard]] bool list_member(std::size_t stmt) const {
    return list_members_.count(stmt) > 0;
  }
  [[nodiscard]] bool declares(std::string_view name) const {
    return declared_.count(std::string(name)) > 0;
  }
  [[nodiscard]] Span span(TokenRange r) const { return s_.sig_span(r); }
  [[nodiscard]] std::string text(TokenRange r) const {
    return std::string(s_.text(r));
  }
  [[nodiscard]] std::string between(std::size_t a, std::size_t b) const {
    return s_.source().substr(a, b - a);
  }

  /// `base`, or `base` with the smallest numeric suffix that is unused.
  [[nodiscard]] std::string fresh(const std::string& base) const {
    auto taken = [&](const std::string& n) {
      return s_.uses_name(n) || syntax::is_reserved_name(n);
    };
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + std::to_string(i);
      if (!taken(n)) return n;
    }
  }

  [[nodiscard]] bool range_has(TokenRange r, std::string_view lexeme) const {
    for (auto i = r.first; i < r.last; ++i) {
      if (s_.sig_kind(i) != syntax::TokenKind::Literal && s_.sig(i) == lexeme) {
        return true;
      }
    }
    return false;
  }

 private:
  const CodeSnippet& s_;
  std::unordered_set<std::size_t> list_members_;
  std::set<std::string> declared_;
};

inline bool is_jump(StmtKind k) {
  return k == StmtKind::Return || k == StmtKind::Throw ||
         k == StmtKind::Break || k == StmtKind::Continue ||
         k == StmtKind::Yield;
}

// Byte offsets inside blocks where a new statement may be inserted.
inline std::vector<std::size_t> insertion_points(const RewriteContext& cx) {
  const auto& s = cx.snippet();
  std::unordered_set<std::size_t> ctor_bodies;
  for (const auto& m : s.tree().methods) {
    if (m.is_constructor && m.body != kNone) ctor_bodies.insert(m.body);
  }
  std::vector<std::size_t> points;
  const auto& stmts = s.tree().statements;
  for (std::size_t b = 0; b < stmts.size(); ++b) {
    const auto& blk = stmts[b];
    if (blk.kind != StmtKind::Block) continue;
    for (std::size_t i = 0; i <= blk.children.size(); ++i) {
      if (i == 0) {
        if (ctor_bodies.count(b) && !blk.children.empty()) {
          const auto first = cx.stmt(blk.children[0]).range.first;
          if (s.sig(first) == "this" || s.sig(first) == "super") continue;
        }
        points.push_back(cx.span({blk.range.first, blk.range.first + 1}).end);
        continue;
      }
      const auto& prev = cx.stmt(blk.children[i - 1]);
      if (is_jump(prev.kind)) continue;
      points.push_back(cx.span(prev.range).end);
    }
  }
  return points;
}

inline std::vector<Site> add_log_sites(const RewriteContext& cx,
                                       std::mt19937_64& rng) {
  static constexpr std::array<std::string_view, 6> kMessages = {
      "debug", "enter", "checkpoint", "trace", "processing", "done"};
  if (cx.declares("System")) return {};
  std::vector<Site> sites;
  for (auto at : insertion_points(cx)) {
    const auto msg = kMessages[rng() % kMessages.size()];
    sites.push_back(
        {{at, at, " System.out.println(\"" + std::string(msg) + "\");"}});
  }
  return sites;
}

inline std::vector<Site> dead_code_sites(const RewriteContext& cx,
                                         std::mt19937_64& rng) {
  static constexpr std::array<std::string_view, 4> kBases = {
      "unused", "dummy", "placeholder", "scratch"};
  std::vector<Site> sites;
  for (auto at : insertion_points(cx)) {
    const auto v = cx.fresh(std::string(kBases[rng() % kBases.size()]));
    sites.push_back(
        {{at, at, " if (false) { int " + v + " = 0; " + v + "++; }"}});
  }
  return sites;
}

// Splits a comma-separated expression list at top-level commas.
inline std::vector<std::string> split_list(const RewriteContext& cx,
                                           TokenRange r) {
  std::vector<std::string> parts;
  const auto& s = cx.snippet();
  int depth = 0;
  std::size_t start = r.first;
  for (auto i = r.first; i <= r.last; ++i) {
    if (i == r.last || (depth == 0 && s.sig(i) == "," &&
                        s.sig_kind(i) == syntax::TokenKind::Operator)) {
      if (i > start) parts.push_back(cx.text({start, i}));
      start = i + 1;
      continue;
    }
    const auto t = s.sig(i);
    if (s.sig_kind(i) != syntax::TokenKind::Operator) continue;
    if (t == "(" || t == "[" || t == "{") ++depth;
    if (t == ")" || t == "]" || t == "}") --depth;
  }
  return parts;
}

inline std::vector<Site> loop_exchange_sites(const RewriteContext& cx) {
  const auto& s = cx.snippet();
  const auto& stmts = s.tree().statements;
  std::vector<Site> sites;
  for (std::size_t k = 0; k < stmts.size(); ++k) {
    const auto& st = stmts[k];
    if (st.kind == StmtKind::While) {
      // while (c) B  ->  for (; c;) B
      const auto cond = cx.expr(st.condition).range;
      const Span head = cx.span({st.range.first, cond.last + 1});
      sites.push_back({{head.begin, head.end,
                        "for (; " + cx.text(cond) + ";)"}});
      continue;
    }
    if (st.kind != StmtKind::For) continue;
    const auto& body = cx.stmt(st.children[0]);
    if (cx.range_has(body.range, "continue")) continue;

    std::string updates;
    for (const auto& u : split_list(cx, st.update)) updates += " " + u + ";";
    std::string new_body;
    if (body.kind == StmtKind::Block) {
      const Span open = cx.span({body.range.first, body.range.first + 1});
      const Span close = cx.span({body.range.last - 1, body.range.last});
      // Updates go after the last statement, before the closing layout.
      std::string inner = cx.between(open.end, close.begin);
      const auto keep = inner.find_last_not_of(" \t\r\n");
      std::string layout =
          keep == std::string::npos ? inner : inner.substr(keep + 1);
      inner.resize(keep == std::string::npos ? 0 : keep + 1);
      if (layout.empty()) layout = " ";
      new_body = "{" + inner + updates + layout + "}";
    } else {
      new_body = "{ " + cx.text(body.range) + updates + " }";
    }
    const std::string cond =
        st.condition == kNone ? "true" : cx.text(cx.expr(st.condition).range);
    std::string loop = "while (" + cond + ") " + new_body;
    std::string out;
    if (st.init.empty()) {
      out = loop;
    } else {
      std::string init;
      if (!st.declarators.empty()) {
        init = cx.text(st.init) + ";";
      } else {
        for (const auto& e : split_list(cx, st.init)) init += e + "; ";
        init.pop_back();
      }
      const bool bare = st.declarators.empty() && cx.list_member(k);
      out = bare ? init + " " + loop : "{ " + init + " " + loop + " }";
    }
    const Span whole = cx.span(st.range);
    sites.push_back({{whole.begin, whole.end, out}});
  }
  return sites;
}

inline bool has_call_like(const RewriteContext& cx, TokenRange r) {
  const auto& s = cx.snippet();
  for (auto i = r.first; i < r.last; ++i) {
    const auto t = s.sig(i);
    if (s.sig_kind(i) == syntax::TokenKind::Literal) continue;
    if (t == "(" || t == "." || t == "new" || t == "this" || t == "super" ||
        t == "::" || t == "->" || t == "{" || t == "@") {
      return true;
    }
  }
  return false;
}

inline std::set<std::string> names_in(const RewriteContext& cx,
                                      const syntax::Statement& st) {
  const auto& s = cx.snippet();
  std::set<std::string> names;
  for (auto i = st.range.first; i < st.range.last; ++i) {
    if (st.kind == StmtKind::LocalVar && st.type.contains(i)) continue;
    if (s.sig_kind(i) == syntax::TokenKind::Identifier) {
      names.emplace(s.sig(i));
    }
  }
  return names;
}

inline std::vector<Site> swap_sites(const RewriteContext& cx) {
  const auto& stmts = cx.snippet().tree().statements;
  std::vector<Site> sites;
  auto eligible = [&](const syntax::Statement& st) {
    return (st.kind == StmtKind::Expression ||
            st.kind == StmtKind::LocalVar) &&
           !has_call_like(cx, st.range);
  };
  for (const auto& blk : stmts) {
    if (blk.kind != StmtKind::Block) continue;
    for (std::size_t i = 0; i + 1 < blk.children.size(); ++i) {
      const auto& a = cx.stmt(blk.children[i]);
      const auto& b = cx.stmt(blk.children[i + 1]);
      if (!eligible(a) || !eligible(b)) continue;
      const auto na = names_in(cx, a);
      const auto nb = names_in(cx, b);
      const bool disjoint = std::none_of(na.begin(), na.end(), [&](auto& n) {
        return nb.count(n) > 0;
      });
      if (!disjoint) continue;
      const Span sa = cx.span(a.range);
      const Span sb = cx.span(b.range);
      sites.push_back({{sa.begin, sa.end, cx.text(b.range)},
                       {sb.begin, sb.end, cx.text(a.range)}});
    }
  }
  return sites;
}

inline int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  return 10;
}

inline std::string op_text(const RewriteContext& cx,
                           const syntax::Expression& e) {
  std::string op;
  for (std::size_t i = 0; i < e.op_width; ++i) op += cx.snippet().sig(e.op + i);
  return op;
}

inline int expression_precedence(const RewriteContext& cx,
                                 const syntax::Expression& e) {
  switch (e.kind) {
    case ExprKind::Binary: return binary_precedence(op_text(cx, e));
    case ExprKind::InstanceOf: return 7;
    case ExprKind::Ternary:
    case ExprKind::Assign:
    case ExprKind::Lambda: return 0;
    default: return 100;
  }
}

inline bool pure(const RewriteContext& cx, std::size_t e) {
  const auto& x = cx.expr(e);
  switch (x.kind) {
    case ExprKind::Assign:
    case ExprKind::IncDec:
    case ExprKind::Call:
    case ExprKind::New:
    case ExprKind::Lambda:
    case ExprKind::Switch:
    case ExprKind::MethodRef:
    case ExprKind::ArrayInit: return false;
    default: break;
  }
  return std::all_of(x.children.begin(), x.children.end(),
                     [&](std::size_t c) { return pure(cx, c); });
}

// Whether evaluating `e` may raise (null dereference, bad index, bad cast,
// division by zero).
inline bool may_throw(const RewriteContext& cx, std::size_t e) {
  const auto& x = cx.expr(e);
  if (x.kind == ExprKind::FieldAccess || x.kind == ExprKind::ArrayAccess ||
      x.kind == ExprKind::Cast) {
    return true;
  }
  if (x.kind == ExprKind::Binary) {
    const auto op = op_text(cx, x);
    if (op == "/" || op == "%") return true;
  }
  return std::any_of(x.children.begin(), x.children.end(),
                     [&](std::size_t c) { return may_throw(cx, c); });
}

inline std::string_view mirrored(std::string_view op) {
  if (op == "<") return ">";
  if (op == ">") return "<";
  if (op == "<=") return ">=";
  if (op == ">=") return "<=";
  return op;  // == and != are symmetric
}

inline void collect_comparisons(const RewriteContext& cx, std::size_t e,
                                std::vector<Site>& sites) {
  const auto& x = cx.expr(e);
  if (x.kind == ExprKind::Lambda || x.kind == ExprKind::Switch) return;
  for (auto c : x.children) collect_comparisons(cx, c, sites);
  if (x.kind != ExprKind::Binary || x.children.size() != 2) return;
  const auto op = op_text(cx, x);
  if (binary_precedence(op) != 6 && binary_precedence(op) != 7) return;
  const auto lhs = x.children[0];
  const auto rhs = x.children[1];
  if (!pure(cx, lhs) || !pure(cx, rhs)) return;
  if (may_throw(cx, lhs) && may_throw(cx, rhs)) return;

  const int prec = binary_precedence(op);
  auto operand = [&](std::size_t c) {
    std::string t = cx.text(cx.expr(c).range);
    return expression_precedence(cx, cx.expr(c)) <= prec ? "(" + t + ")" : t;
  };
  const Span l = cx.span(cx.expr(lhs).range);
  const Span r = cx.span(cx.expr(rhs).range);
  const Span o = cx.span({x.op, x.op + x.op_width});
  const std::string out = operand(rhs) + cx.between(l.end, o.begin) +
                          std::string(mirrored(op)) +
                          cx.between(o.end, r.begin) + operand(lhs);
  sites.push_back({{l.begin, r.end, out}});
}

inline std::vector<Site> reorder_sites(const RewriteContext& cx) {
  std::vector<Site> sites;
  for (const auto& st : cx.snippet().tree().statements) {
    const bool conditional = st.kind == StmtKind::If ||
                             st.kind == StmtKind::While ||
                             st.kind == StmtKind::Do ||
                             st.kind == StmtKind::For;
    if (!conditional || st.condition == kNone) continue;
    collect_comparisons(cx, st.condition, sites);
  }
  return sites;
}

inline bool int_or_char_label(const RewriteContext& cx, std::size_t e) {
  const auto& x = cx.expr(e);
  const auto& s = cx.snippet();
  if (x.kind == ExprKind::Unary && x.children.size() == 1 &&
      s.sig(x.range.first) == "-") {
    return int_or_char_label(cx, x.children[0]);
  }
  if (x.kind == ExprKind::Parens && x.children.size() == 1) {
    return int_or_char_label(cx, x.children[0]);
  }
  if (x.kind != ExprKind::Literal) return false;
  const auto t = s.sig(x.range.first);
  if (t.empty()) return false;
  if (t.front() == '\'') return true;
  if (!(t.front() >= '0' && t.front() <= '9')) return false;
  // integer literals only: no fraction, exponent, or long/float suffix
  const bool hex = t.size() > 1 && (t[1] == 'x' || t[1] == 'X');
  for (char c : t) {
    if (c == '.' || c == 'l' || c == 'L') return false;
    if (!hex && (c == 'e' || c == 'E' || c == 'f' || c == 'F' || c == 'd' ||
                 c == 'D')) {
      return false;
    }
  }
  return true;
}

inline std::vector<Site> switch_sites(const RewriteContext& cx) {
  const auto& s = cx.snippet();
  std::vector<Site> sites;
  for (const auto& st : s.tree().statements) {
    if (st.kind != StmtKind::Switch || st.expression_form) continue;
    if (st.groups.empty() || !pure(cx, st.expression)) continue;

    bool ok = true;
    std::vector<std::set<std::string>> locals(st.groups.size());
    for (std::size_t g = 0; g < st.groups.size() && ok; ++g) {
      const auto& grp = st.groups[g];
      if (grp.arrow) ok = false;
      for (auto l : grp.labels) ok = ok && int_or_char_label(cx, l);
      const bool last = g + 1 == st.groups.size();
      if (!ok) break;
      if (grp.statements.empty()) {
        ok = last;
        continue;
      }
      const auto& tail = cx.stmt(grp.statements.back());
      const bool ends_break =
          tail.kind == StmtKind::Break && tail.range.size() == 2;
      const bool ends_jump = tail.kind == StmtKind::Return ||
                             tail.kind == StmtKind::Throw ||
                             tail.kind == StmtKind::Continue;
      if (!ends_break && !ends_jump && !last) ok = false;
      for (std::size_t i = 0; i < grp.statements.size() && ok; ++i) {
        const auto& gs = cx.stmt(grp.statements[i]);
        if (ends_break && i + 1 == grp.statements.size()) continue;
        if (cx.range_has(gs.range, "break")) ok = false;
        if (gs.kind == StmtKind::LocalVar) {
          for (const auto& d : gs.declarators) locals[g].emplace(s.sig(d.name));
        }
      }
    }
    if (!ok) continue;
    // A local declared in one group and visible in a later one would fall
    // out of scope once the groups become separate blocks.
    for (std::size_t g = 0; g < st.groups.size() && ok; ++g) {
      for (std::size_t h = 0; h < st.groups.size() && ok; ++h) {
        if (g == h) continue;
        for (const auto& n : locals[g]) {
          for (auto i = st.groups[h].range.first;
               i < st.groups[h].range.last; ++i) {
            if (s.sig(i) == n) ok = false;
          }
        }
      }
    }
    if (!ok) continue;

    const auto& sel = cx.expr(st.expression);
    std::string selector = cx.text(sel.range);
    if (sel.kind != ExprKind::Name && sel.kind != ExprKind::Literal) {
      selector = "(" + selector + ")";
    }
    auto body = [&](const syntax::SwitchGroup& grp) -> std::string {
      std::size_t n = grp.statements.size();
      if (n > 0 && cx.stmt(grp.statements.back()).kind == StmtKind::Break) {
        --n;
      }
      if (n == 0) return "{ }";
      const Span a = cx.span(cx.stmt(grp.statements.front()).range);
      const Span b = cx.span(cx.stmt(grp.statements[n - 1]).range);
      return "{ " + cx.between(a.begin, b.end) + " }";
    };
    std::string out;
    const syntax::SwitchGroup* fallback = nullptr;
    for (const auto& grp : st.groups) {
      if (grp.is_default) {
        fallback = &grp;
        continue;
      }
      std::string cond;
      for (auto l : grp.labels) {
        if (!cond.empty()) cond += " || ";
        cond += selector + " == " + cx.text(cx.expr(l).range);
      }
      out += (out.empty() ? "if (" : " else if (") + cond + ") " + body(grp);
    }
    if (fallback != nullptr) {
      out = out.empty() ? body(*fallback) : out + " else " + body(*fallback);
    }
    const Span whole = cx.span(st.range);
    sites.push_back({{whole.begin, whole.end, out}});
  }
  return sites;
}

inline std::vector<Site> try_catch_sites(const RewriteContext& cx,
                                         std::mt19937_64& rng) {
  static constexpr std::array<std::string_view, 3> kBases = {"ex", "err",
                                                             "exc"};
  const auto& s = cx.snippet();
  if (cx.declares("RuntimeException")) return {};
  std::unordered_set<std::size_t> arrow_bodies;
  for (const auto& st : s.tree().statements) {
    for (const auto& g : st.groups) {
      if (g.arrow) {
        for (auto c : g.statements) arrow_bodies.insert(c);
      }
    }
  }
  std::vector<Site> sites;
  const auto& stmts = s.tree().statements;
  for (std::size_t k = 0; k < stmts.size(); ++k) {
    const auto& st = stmts[k];
    if (st.kind != StmtKind::Expression || arrow_bodies.count(k)) continue;
    const auto head = s.sig(st.range.first);
    if ((head == "this" || head == "super") &&
        s.sig(st.range.first + 1) == "(") {
      continue;
    }
    const auto v = cx.fresh(std::string(kBases[rng() % kBases.size()]));
    const Span sp = cx.span(st.range);
    sites.push_back({{sp.begin, sp.end,
                      "try { " + cx.text(st.range) +
                          " } catch (RuntimeException " + v + ") { throw " +
                          v + "; }"}});
  }
  return sites;
}

inline std::vector<Site> bool_flip_sites(const RewriteContext& cx) {
  const auto& s = cx.snippet();
  const auto& tree = s.tree();
  std::vector<Site> sites;
  for (const auto& st : tree.statements) {
    if (st.kind != StmtKind::LocalVar || st.declarators.size() != 1) continue;
    if (st.type.size() != 1 || s.sig(st.type.first) != "boolean") continue;
    const auto& d = st.declarators[0];
    if (d.initializer == kNone) continue;
    const auto& init = cx.expr(d.initializer);
    const auto lit = s.sig(init.range.first);
    if (init.kind != ExprKind::Literal || (lit != "true" && lit != "false")) {
      continue;
    }
    const std::string name(s.sig(d.name));
    const auto decls = std::count_if(
        tree.declarations.begin(), tree.declarations.end(),
        [&](const syntax::Declaration& x) { return s.sig(x.name) == name; });
    if (decls != 1 || !s.has_identifier(name)) continue;

    // Map occurrence token (significant index) -> simple-assignment rhs.
    const auto& sig = s.significant();
    auto sig_index = [&](std::size_t token) {
      return static_cast<std::size_t>(
          std::lower_bound(sig.begin(), sig.end(), token) - sig.begin());
    };
    std::vector<Edit> edits;
    bool ok = true;
    for (auto tok : s.identifier(name).tokens) {
      const auto i = sig_index(tok);
      if (i == d.name) continue;
      const Span sp = cx.span({i, i + 1});
      const syntax::Expression* assign = nullptr;
      for (const auto& e : tree.expressions) {
        if (e.kind == ExprKind::Assign && e.children.size() == 2 &&
            cx.expr(e.children[0]).range.first == i &&
            cx.expr(e.children[0]).range.last == i + 1) {
          assign = &e;
          break;
        }
      }
      if (assign == nullptr) {
        const auto prev = i > 0 ? s.sig(i - 1) : std::string_view{};
        const auto next = s.sig(i + 1);
        // this.x or a write we could not pair with an assignment
        if (prev == "." || next == "=") {
          ok = false;
          break;
        }
        edits.push_back({sp.begin, sp.end, "(!" + name + ")"});
        continue;
      }
      if (op_text(cx, *assign) != "=") {
        ok = false;  // compound assignment
        break;
      }
      const Span rhs = cx.span(cx.expr(assign->children[1]).range);
      edits.push_back({rhs.begin, rhs.begin, "!("});
      edits.push_back({rhs.end, rhs.end, ")"});
    }
    if (!ok) continue;
    const Span lit_span = cx.span(init.range);
    edits.push_back(
        {lit_span.begin, lit_span.end, lit == "true" ? "false" : "true"});
    sites.push_back(std::move(edits));
  }
  return sites;
}

inline std::vector<Site> sites_for(TransformKind kind, const RewriteContext& cx,
                                   std::mt19937_64& rng) {
  switch (kind) {
    case TransformKind::AddLog: return add_log_sites(cx, rng);
    case TransformKind::LoopExchange: return loop_exchange_sites(cx);
    case TransformKind::SwapIndependentStatements: return swap_sites(cx);
    case TransformKind::ReorderBinaryCondition: return reorder_sites(cx);
    case TransformKind::SwitchToIf: return switch_sites(cx);
    case TransformKind::AddTryCatch: return try_catch_sites(cx, rng);
    case TransformKind::AddDeadCode: return dead_code_sites(cx, rng);
    case TransformKind::BoolFlipPropagate: return bool_flip_sites(cx);
  }
  return {};
}

}  // namespace detail

/// Number of places `kind` could rewrite in `snippet`.
inline std::size_t count_sites(TransformKind kind, const CodeSnippet& snippet) {
  std::mt19937_64 rng(0);
  return detail::sites_for(kind, detail::RewriteContext(snippet), rng).size();
}

/// Applies one rewrite of `kind` at a site chosen by `seed`, or nullopt when
/// the snippet has no site for it. Throws TransformError if the result does
/// not parse.
inline std::optional<TransformedVariant> apply(TransformKind kind,
                                               const CodeSnippet& snippet,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const detail::RewriteContext cx(snippet);
  auto sites = detail::sites_for(kind, cx, rng);
  if (sites.empty()) return std::nullopt;
  const auto pick = std::uniform_int_distribution<std::size_t>(
      0, sites.size() - 1)(rng);
  std::string code = apply_edits(snippet.source(), std::move(sites[pick]));
  try {
    (void)parse(code);
  } catch (const syntax::SyntaxError& e) {
    throw TransformError(std::string(to_string(kind)) +
                         " produced invalid code: " + e.what());
  }
  return TransformedVariant{std::move(code), {kind}, seed};
}

/// Draws up to `n` distinct variants, each a composition of 1..max_depth
/// applicable rewrites. The sequence for a larger `n` extends the one for a
/// smaller `n` under the same seed.
inline std::vector<TransformedVariant> sample_variants(
    const CodeSnippet& snippet, std::size_t n, std::uint64_t seed,
    int max_depth = 3) {
  if (n == 0) throw std::invalid_argument("sample_variants: n must be >= 1");
  if (max_depth < 1) max_depth = 1;
  std::vector<TransformedVariant> out;
  auto applicable = [](const CodeSnippet& s) {
    std::vector<TransformKind> kinds;
    for (auto k : kTransformKinds) {
      if (count_sites(k, s) > 0) kinds.push_back(k);
    }
    return kinds;
  };
  if (applicable(snippet).empty()) return out;

  std::mt19937_64 rng(seed);
  std::set<std::string> seen{snippet.source()};
  const std::size_t max_attempts = 20 * n + 20;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < n;
       ++attempt) {
    const std::uint64_t variant_seed = rng();
    std::mt19937_64 local(variant_seed);
    const int depth = std::uniform_int_distribution<int>(1, max_depth)(local);
    CodeSnippet current = snippet;
    TransformedVariant v;
    v.seed = variant_seed;
    for (int d = 0; d < depth; ++d) {
      const auto kinds = applicable(current);
      if (kinds.empty()) break;
      const auto kind = kinds[std::uniform_int_distribution<std::size_t>(
          0, kinds.size() - 1)(local)];
      auto step = apply(kind, current, local());
      if (!step) break;
      v.applied.push_back(kind);
      current = parse(step->code);
    }
    if (v.applied.empty()) continue;
    v.code = current.source();
    if (!seen.insert(v.code).second) continue;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace codeattack
