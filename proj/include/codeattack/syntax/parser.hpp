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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codeattack/syntax/lexer.hpp"
#include "codeattack/syntax/tree.hpp"

namespace codeattack::syntax {

/// Recursive-descent recognizer for Java (through Java 17 syntax) that
/// records the statement, expression and declaration structure needed for
/// identifier classification and source rewriting.
///
/// Accepts either a compilation unit or a bare sequence of class members
/// (the function-level granularity of most benchmark datasets); the latter is
/// treated as if it were the body of an enclosing class.
class Parser {
 public:
  Parser(std::string_view source, const std::vector<Token>& tokens)
      : source_(source), tokens_(tokens) {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (!tokens_[i].is_trivia()) significant_.push_back(i);
    }
  }

  /// Token-vector index of each significant token.
  [[nodiscard]] const std::vector<std::size_t>& significant() const {
    return significant_;
  }

  SyntaxTree parse() {
    std::size_t first_failure = 0;
    std::string first_message;
    try {
      compilation_unit();
      return std::move(tree_);
    } catch (const Failure& f) {
      first_failure = f.pos;
      first_message = f.message;
    }
    reset({0, 0, 0, 0, 0});
    try {
      while (!eof()) member(false);
      return std::move(tree_);
    } catch (const Failure& f) {
      if (f.pos >= first_failure) {
        first_failure = f.pos;
        first_message = f.message;
      }
    }
    std::size_t offset = source_.size();
    if (first_failure < significant_.size()) {
      offset = tokens_[significant_[first_failure]].begin;
    }
    const auto [line, col] = LineIndex(source_).locate(offset);
    throw SyntaxError(first_message, line, col);
  }

 private:
  struct Failure {
    std::size_t pos;
    std::string message;
  };

  struct Checkpoint {
    std::size_t pos, exprs, stmts, decls, methods;
  };

  // ---------------------------------------------------------------- tokens

  [[nodiscard]] bool eof(std::size_t ahead = 0) const {
    return pos_ + ahead >= significant_.size();
  }

  [[nodiscard]] std::string_view text(std::size_t ahead = 0) const {
    if (eof(ahead)) return {};
    const auto& t = tokens_[significant_[pos_ + ahead]];
    return source_.substr(t.begin, t.size());
  }

  [[nodiscard]] TokenKind kind(std::size_t ahead = 0) const {
    return tokens_[significant_[pos_ + ahead]].kind;
  }

  [[nodiscard]] bool is(std::string_view lexeme, std::size_t ahead = 0) const {
    return !eof(ahead) && kind(ahead) != TokenKind::Literal &&
           text(ahead) == lexeme;
  }

  [[nodiscard]] bool ident(std::size_t ahead = 0) const {
    return !eof(ahead) && kind(ahead) == TokenKind::Identifier;
  }

  [[nodiscard]] bool literal(std::size_t ahead = 0) const {
    return !eof(ahead) && kind(ahead) == TokenKind::Literal;
  }

  // True when significant tokens at ahead and ahead+1 touch (no trivia).
  [[nodiscard]] bool adjacent(std::size_t ahead) const {
    if (eof(ahead + 1)) return false;
    return tokens_[significant_[pos_ + ahead]].end ==
           tokens_[significant_[pos_ + ahead + 1]].begin;
  }

  // Width in tokens of `op` spelled by adjacent tokens at the cursor, or 0.
  [[nodiscard]] std::size_t fused(std::string_view op) const {
    std::string acc;
    for (std::size_t k = 0; k < 4 && !eof(k); ++k) {
      if (k > 0 && !adjacent(k - 1)) return 0;
      if (kind(k) != TokenKind::Operator) return 0;
      acc += text(k);
      if (acc == op) return k + 1;
      if (acc.size() >= op.size()) return 0;
    }
    return 0;
  }

  [[noreturn]] void fail(const std::string& message) const {
    std::string found = eof() ? std::string("end of input")
                              : "'" + std::string(text()) + "'";
    throw Failure{pos_, message + ", found " + found};
  }

  void expect(std::string_view lexeme) {
    if (!is(lexeme)) fail("expected '" + std::string(lexeme) + "'");
    ++pos_;
  }

  std::size_t expect_ident() {
    if (!ident()) fail("expected identifier");
    return pos_++;
  }

  [[nodiscard]] Checkpoint mark() const {
    return {pos_, tree_.expressions.size(), tree_.statements.size(),
            tree_.declarations.size(), tree_.methods.size()};
  }

  void reset(const Checkpoint& cp) {
    pos_ = cp.pos;
    tree_.expressions.resize(cp.exprs);
    tree_.statements.resize(cp.stmts);
    tree_.declarations.resize(cp.decls);
    tree_.methods.resize(cp.methods);
  }

  void declare(std::size_t name, DeclKind kind) {
    tree_.declarations.push_back({name, kind});
  }

  std::size_t add(Expression e) {
    tree_.expressions.push_back(std::move(e));
    return tree_.expressions.size() - 1;
  }

  std::size_t add(Statement s) {
    tree_.statements.push_back(std::move(s));
    return tree_.statements.size() - 1;
  }

  [[nodiscard]] bool primitive(std::size_t ahead = 0) const {
    static constexpr std::string_view kPrimitives[] = {
        "boolean", "byte", "char", "short", "int", "long", "float", "double"};
    for (auto p : kPrimitives) {
      if (is(p, ahead)) return true;
    }
    return false;
  }

  // ------------------------------------------------------------ declarations

  struct Modifiers {
    bool any = false;
    bool overrides = false;
    bool is_static = false;
  };

  Modifiers modifiers() {
    static constexpr std::string_view kWords[] = {
        "public",   "protected",    "private",   "static",
        "abstract", "final",        "native",    "synchronized",
        "transient", "volatile",    "strictfp",  "default"};
    Modifiers mods;
    for (;;) {
      if (is("@") && !is("interface", 1)) {
        if (text(1) == "Override") mods.overrides = true;
        annotation();
        mods.any = true;
        continue;
      }
      bool matched = false;
      for (auto w : kWords) {
        // `default` followed by ':' or '->' is a switch label, not a modifier.
        if (is(w) && !(w == "default" && (is(":", 1) || is("->", 1)))) {
          if (w == "static") mods.is_static = true;
          ++pos_;
          matched = true;
          break;
        }
      }
      if (!matched && ident() && text() == "sealed" &&
          (is("class", 1) || is("interface", 1) || is("abstract", 1) ||
           is("public", 1) || is("static", 1))) {
        ++pos_;
        matched = true;
      }
      if (!matched && ident() && text() == "non" && is("-", 1) &&
          text(2) == "sealed") {
        pos_ += 3;
        matched = true;
      }
      if (!matched) return mods;
      mods.any = true;
    }
  }

  void annotation() {
    expect("@");
    qualified_name();
    if (!is("(")) return;
    ++pos_;
    if (!is(")")) {
      if (ident() && is("=", 1)) {
        for (;;) {
          expect_ident();
          expect("=");
          element_value();
          if (!is(",")) break;
          ++pos_;
        }
      } else {
        element_value();
      }
    }
    expect(")");
  }

  void element_value() {
    if (is("@")) {
      annotation();
    } else if (is("{")) {
      ++pos_;
      while (!is("}")) {
        element_value();
        if (!is(",")) break;
        ++pos_;
      }
      expect("}");
    } else {
      ternary();
    }
  }

  void skip_annotations() {
    while (is("@") && !is("interface", 1)) annotation();
  }

  void qualified_name() {
    expect_ident();
    while (is(".") && ident(1)) pos_ += 2;
  }

  void type_arguments() {
    expect("<");
    if (is(">")) {
      ++pos_;  // diamond
      return;
    }
    for (;;) {
      skip_annotations();
      if (is("?")) {
        ++pos_;
        if (is("extends") || is("super")) {
          ++pos_;
          type();
        }
      } else {
        type();
      }
      if (!is(",")) break;
      ++pos_;
    }
    expect(">");
  }

  void type_parameters() {
    expect("<");
    for (;;) {
      skip_annotations();
      declare(expect_ident(), DeclKind::TypeParam);
      if (is("extends")) {
        ++pos_;
        type();
        while (is("&")) {
          ++pos_;
          type();
        }
      }
      if (!is(",")) break;
      ++pos_;
    }
    expect(">");
  }

  void class_type() {
    expect_ident();
    if (is("<")) type_arguments();
    while (is(".") && (ident(1) || is("@", 1))) {
      ++pos_;
      skip_annotations();
      expect_ident();
      if (is("<")) type_arguments();
    }
  }

  void dims() {
    for (;;) {
      const auto cp = pos_;
      skip_annotations();
      if (is("[") && is("]", 1)) {
        pos_ += 2;
      } else {
        pos_ = cp;
        return;
      }
    }
  }

  void type() {
    skip_annotations();
    if (primitive()) {
      ++pos_;
    } else if (ident()) {
      class_type();
    } else {
      fail("expected type");
    }
    dims();
  }

  void type_list() {
    type();
    while (is(",")) {
      ++pos_;
      type();
    }
  }

  [[nodiscard]] bool at_type_declaration() const {
    if (is("class") || is("interface") || is("enum")) return true;
    if (is("@") && is("interface", 1)) return true;
    return ident() && text() == "record" && ident(1) &&
           (is("(", 2) || is("<", 2));
  }

  void compilation_unit() {
    for (;;) {
      if (eof()) break;
      if (is(";")) {
        ++pos_;
        continue;
      }
      if (is("package") || (is("@") && !is("interface", 1) && package_ahead())) {
        skip_annotations();
        expect("package");
        qualified_name();
        expect(";");
        continue;
      }
      if (is("import")) {
        ++pos_;
        if (is("static")) ++pos_;
        expect_ident();
        while (is(".")) {
          ++pos_;
          if (is("*")) {
            ++pos_;
            break;
          }
          expect_ident();
        }
        expect(";");
        continue;
      }
      modifiers();
      if (!at_type_declaration()) fail("expected type declaration");
      type_declaration();
    }
  }

  [[nodiscard]] bool package_ahead() const {
    for (std::size_t k = 0; !eof(k); ++k) {
      if (is("package", k)) return true;
      if (is("class", k) || is("interface", k) || is("enum", k)) return false;
    }
    return false;
  }

  void type_declaration() {
    if (is("class")) {
      ++pos_;
      declare(expect_ident(), DeclKind::Type);
      if (is("<")) type_parameters();
      if (is("extends")) {
        ++pos_;
        type();
      }
      if (is("implements")) {
        ++pos_;
        type_list();
      }
      if (ident() && text() == "permits") {
        ++pos_;
        type_list();
      }
      class_body(false);
    } else if (is("interface")) {
      ++pos_;
      declare(expect_ident(), DeclKind::Type);
      if (is("<")) type_parameters();
      if (is("extends")) {
        ++pos_;
        type_list();
      }
      if (ident() && text() == "permits") {
        ++pos_;
        type_list();
      }
      class_body(false);
    } else if (is("@")) {
      pos_ += 2;
      declare(expect_ident(), DeclKind::Type);
      class_body(false);
    } else if (is("enum")) {
      ++pos_;
      declare(expect_ident(), DeclKind::Type);
      if (is("implements")) {
        ++pos_;
        type_list();
      }
      enum_body();
    } else if (ident() && text() == "record") {
      ++pos_;
      declare(expect_ident(), DeclKind::Type);
      if (is("<")) type_parameters();
      expect("(");
      if (!is(")")) {
        for (;;) {
          modifiers();
          type();
          if (is("...")) ++pos_;
          declare(expect_ident(), DeclKind::RecordComponent);
          if (!is(",")) break;
          ++pos_;
        }
      }
      expect(")");
      if (is("implements")) {
        ++pos_;
        type_list();
      }
      class_body(true);
    } else {
      fail("expected type declaration");
    }
  }

  void class_body(bool record) {
    expect("{");
    while (!is("}")) {
      if (eof()) fail("unterminated class body");
      member(record);
    }
    expect("}");
  }

  void enum_body() {
    expect("{");
    while (ident() || is("@")) {
      skip_annotations();
      declare(expect_ident(), DeclKind::EnumConstant);
      if (is("(")) arguments();
      if (is("{")) class_body(false);
      if (!is(",")) break;
      ++pos_;
    }
    if (is(";")) {
      ++pos_;
      while (!is("}")) {
        if (eof()) fail("unterminated enum body");
        member(false);
      }
    }
    expect("}");
  }

  void member(bool record) {
    if (is(";")) {
      ++pos_;
      return;
    }
    if (is("{")) {
      block();
      return;
    }
    if (is("static") && is("{", 1)) {
      ++pos_;
      block();
      return;
    }
    const Modifiers mods = modifiers();
    if (at_type_declaration()) {
      type_declaration();
      return;
    }
    if (is("<")) type_parameters();

    MethodInfo info;
    info.overrides = mods.overrides;
    info.is_static = mods.is_static;
    if (ident() && is("(", 1)) {
      info.name = pos_++;
      info.is_constructor = true;
      declare(info.name, DeclKind::Constructor);
      info.params = formal_parameters();
      throws_clause();
      info.body = block();
      tree_.methods.push_back(info);
      return;
    }
    if (record && ident() && is("{", 1)) {
      info.name = pos_++;
      info.is_constructor = true;
      info.params = {pos_, pos_};
      declare(info.name, DeclKind::Constructor);
      info.body = block();
      tree_.methods.push_back(info);
      return;
    }
    if (is("void")) {
      ++pos_;
    } else {
      type();
    }
    const std::size_t name = expect_ident();
    if (is("(")) {
      info.name = name;
      declare(name, DeclKind::Method);
      info.params = formal_parameters();
      dims();
      throws_clause();
      if (is(";")) {
        ++pos_;
      } else if (is("default")) {
        ++pos_;
        element_value();
        expect(";");
      } else {
        info.body = block();
      }
      tree_.methods.push_back(info);
      return;
    }
    declare(name, DeclKind::Field);
    variable_rest(DeclKind::Field);
    while (is(",")) {
      ++pos_;
      declare(expect_ident(), DeclKind::Field);
      variable_rest(DeclKind::Field);
    }
    expect(";");
  }

  // Dimensions and optional initializer after a declarator name.
  std::size_t variable_rest(DeclKind) {
    dims();
    if (!is("=")) return kNone;
    ++pos_;
    return variable_initializer();
  }

  std::size_t variable_initializer() {
    return is("{") ? array_initializer() : expression();
  }

  void throws_clause() {
    if (!is("throws")) return;
    ++pos_;
    type_list();
  }

  TokenRange formal_parameters() {
    const std::size_t first = pos_;
    expect("(");
    if (!is(")")) {
      for (;;) {
        modifiers();
        type();
        skip_annotations();
        if (is("...")) ++pos_;
        if (is("this")) {
          ++pos_;  // receiver parameter
        } else if (ident() && is(".", 1) && is("this", 2)) {
          pos_ += 3;
        } else {
          declare(expect_ident(), DeclKind::Parameter);
          dims();
        }
        if (!is(",")) break;
        ++pos_;
      }
    }
    expect(")");
    return {first, pos_};
  }

  // -------------------------------------------------------------- statements

  std::size_t block() {
    const std::size_t first = pos_;
    expect("{");
    std::vector<std::size_t> children;
    while (!is("}")) {
      if (eof()) fail("unterminated block");
      children.push_back(block_statement());
    }
    expect("}");
    Statement s{StmtKind::Block, {first, pos_}};
    s.children = std::move(children);
    return add(std::move(s));
  }

  std::size_t block_statement() {
    const std::size_t first = pos_;
    if (is("final") || is("abstract") || is("static") || is("strictfp") ||
        (is("@") && !is("interface", 1)) || at_type_declaration()) {
      const auto cp = mark();
      modifiers();
      if (at_type_declaration()) {
        type_declaration();
        return add(Statement{StmtKind::LocalType, {first, pos_}});
      }
      reset(cp);
    }
    if (!(ident() && text() == "yield" && yield_ahead())) {
      Statement decl{StmtKind::LocalVar, {first, first}};
      if (local_variable(decl, true)) {
        decl.range.last = pos_;
        return add(std::move(decl));
      }
    }
    return statement();
  }

  // Parses `[mods] Type name [= init] {, name [= init]}` when the lookahead
  // looks like a declaration; returns false with the cursor untouched
  // otherwise.
  bool local_variable(Statement& out, bool semicolon) {
    const auto cp = mark();
    try {
      modifiers();
      const std::size_t type_first = pos_;
      type();
      out.type = {type_first, pos_};
      if (!ident()) fail("not a declaration");
      if (!(is("=", 1) || is(";", 1) || is(",", 1) || is("[", 1) ||
            is(":", 1) || (!semicolon && eof(1)))) {
        fail("not a declaration");
      }
    } catch (const Failure&) {
      reset(cp);
      return false;
    }
    for (;;) {
      Declarator d;
      d.name = expect_ident();
      declare(d.name, DeclKind::Local);
      d.initializer = variable_rest(DeclKind::Local);
      out.declarators.push_back(d);
      if (!is(",")) break;
      ++pos_;
    }
    if (semicolon) expect(";");
    return true;
  }

  [[nodiscard]] bool yield_ahead() const {
    return !(is("=", 1) || is(".", 1) || is("[", 1) || is("(", 1) ||
             is("++", 1) || is("--", 1) || is(";", 1) || is(",", 1) ||
             is(":", 1) || is("->", 1) || ident(1) || fused_at(1));
  }

  // Compound assignment starting at ahead (e.g. `yield += 1`).
  [[nodiscard]] bool fused_at(std::size_t ahead) const {
    if (eof(ahead)) return false;
    const auto t = text(ahead);
    return t.size() == 2 && t[1] == '=' && t != "==" && t != "!=" &&
           t != "<=" && kind(ahead) == TokenKind::Operator;
  }

  std::size_t statement() {
    const std::size_t first = pos_;
    if (is("{")) return block();
    if (is(";")) {
      ++pos_;
      return add(Statement{StmtKind::Empty, {first, pos_}});
    }
    if (is("if")) {
      ++pos_;
      expect("(");
      Statement s{StmtKind::If, {first, first}};
      s.condition = expression();
      expect(")");
      s.children.push_back(statement());
      if (is("else")) {
        ++pos_;
        s.has_else = true;
        s.children.push_back(statement());
      }
      s.range.last = pos_;
      return add(std::move(s));
    }
    if (is("for")) return for_statement();
    if (is("while")) {
      ++pos_;
      expect("(");
      Statement s{StmtKind::While, {first, first}};
      s.condition = expression();
      expect(")");
      s.children.push_back(statement());
      s.range.last = pos_;
      return add(std::move(s));
    }
    if (is("do")) {
      ++pos_;
      Statement s{StmtKind::Do, {first, first}};
      s.children.push_back(statement());
      expect("while");
      expect("(");
      s.condition = expression();
      expect(")");
      expect(";");
      s.range.last = pos_;
      return add(std::move(s));
    }
    if (is("try")) return try_statement();
    if (is("switch")) return switch_construct(false);
    if (is("return") || is("throw")) {
      const bool ret = is("return");
      ++pos_;
      Statement s{ret ? StmtKind::Return : StmtKind::Throw, {first, first}};
      if (!ret || !is(";")) s.expression = expression();
      expect(";");
      s.range.last = pos_;
      return add(std::move(s));
    }
    if (is("break") || is("continue")) {
      const bool brk = is("break");
      ++pos_;
      if (ident()) ++pos_;
      expect(";");
      return add(Statement{brk ? StmtKind::Break : StmtKind::Continue,
                           {first, pos_}});
    }
    if (is("synchronized")) {
      ++pos_;
      expect("(");
      Statement s{StmtKind::Synchronized, {first, first}};
      s.expression = expression();
      expect(")");
      s.children.push_back(block());
      s.range.last = pos_;
      return add(std::move(s));
    }
    if (is("assert")) {
      ++pos_;
      Statement s{StmtKind::Assert, {first, first}};
      s.expression = expression();
      if (is(":")) {
        ++pos_;
        expression();
      }
      expect(";");
      s.range.last = pos_;
      return add(std::move(s));
    }
    if (ident() && text() == "yield" && yield_ahead()) {
      ++pos_;
      Statement s{StmtKind::Yield, {first, first}};
      s.expression = expression();
      expect(";");
      s.range.last = pos_;
      return add(std::move(s));
    }
    if (ident() && is(":", 1)) {
      pos_ += 2;
      Statement s{StmtKind::Labeled, {first, first}};
      s.children.push_back(statement());
      s.range.last = pos_;
      return add(std::move(s));
    }
    Statement s{StmtKind::Expression, {first, first}};
    s.expression = expression();
    const auto k = tree_.expressions[s.expression].kind;
    if (k != ExprKind::Assign && k != ExprKind::IncDec &&
        k != ExprKind::Call && k != ExprKind::New && k != ExprKind::Switch) {
      pos_ = first;
      fail("not a statement");
    }
    expect(";");
    s.range.last = pos_;
    return add(std::move(s));
  }

  std::size_t for_statement() {
    const std::size_t first = pos_;
    expect("for");
    expect("(");
    {
      const auto cp = mark();
      Statement probe{StmtKind::ForEach, {first, first}};
      bool each = false;
      try {
        modifiers();
        const std::size_t type_first = pos_;
        type();
        probe.type = {type_first, pos_};
        each = ident() && is(":", 1);
      } catch (const Failure&) {
      }
      if (each) {
        declare(pos_, DeclKind::Local);
        probe.declarators.push_back({pos_, kNone});
        pos_ += 2;
        probe.expression = expression();
        expect(")");
        probe.children.push_back(statement());
        probe.range.last = pos_;
        return add(std::move(probe));
      }
      reset(cp);
    }
    Statement s{StmtKind::For, {first, first}};
    s.init.first = pos_;
    if (!is(";")) {
      Statement decl{StmtKind::LocalVar, {pos_, pos_}};
      if (local_variable(decl, false)) {
        s.declarators = std::move(decl.declarators);
        s.type = decl.type;
      } else {
        expression_list();
      }
    }
    s.init.last = pos_;
    expect(";");
    if (!is(";")) s.condition = expression();
    expect(";");
    s.update.first = pos_;
    if (!is(")")) expression_list();
    s.update.last = pos_;
    expect(")");
    s.children.push_back(statement());
    s.range.last = pos_;
    return add(std::move(s));
  }

  void expression_list() {
    expression();
    while (is(",")) {
      ++pos_;
      expression();
    }
  }

  std::size_t try_statement() {
    const std::size_t first = pos_;
    expect("try");
    Statement s{StmtKind::Try, {first, first}};
    if (is("(")) {
      s.has_resources = true;
      ++pos_;
      while (!is(")")) {
        Statement decl{StmtKind::LocalVar, {pos_, pos_}};
        const auto cp = mark();
        if (local_variable(decl, false) && decl.declarators.size() == 1 &&
            decl.declarators[0].initializer != kNone) {
          tree_.declarations.back().kind = DeclKind::Resource;
        } else {
          reset(cp);
          expression();
        }
        if (!is(";")) break;
        ++pos_;
      }
      expect(")");
    }
    s.children.push_back(block());
    bool handlers = false;
    while (is("catch")) {
      ++pos_;
      expect("(");
      modifiers();
      type();
      while (is("|")) {
        ++pos_;
        type();
      }
      declare(expect_ident(), DeclKind::CatchParam);
      expect(")");
      s.children.push_back(block());
      handlers = true;
    }
    if (is("finally")) {
      ++pos_;
      s.children.push_back(block());
      handlers = true;
    }
    if (!handlers && !s.has_resources) fail("expected 'catch' or 'finally'");
    s.range.last = pos_;
    return add(std::move(s));
  }

  std::size_t switch_construct(bool as_expression) {
    const std::size_t first = pos_;
    expect("switch");
    expect("(");
    Statement s{StmtKind::Switch, {first, first}};
    s.expression = expression();
    expect(")");
    expect("{");
    while (!is("}")) {
      if (eof()) fail("unterminated switch");
      SwitchGroup g;
      g.range.first = pos_;
      for (;;) {
        if (is("default")) {
          ++pos_;
          g.is_default = true;
        } else if (is("case")) {
          ++pos_;
          for (;;) {
            if (is("default")) {
              ++pos_;
              g.is_default = true;
            } else {
              g.labels.push_back(ternary());
            }
            if (!is(",")) break;
            ++pos_;
          }
        } else {
          fail("expected 'case' or 'default'");
        }
        if (is("->")) {
          ++pos_;
          g.arrow = true;
          break;
        }
        expect(":");
        if (!is("case") && !is("default")) break;
      }
      if (g.arrow) {
        if (is("{")) {
          g.statements.push_back(block());
        } else if (is("throw")) {
          g.statements.push_back(statement());
        } else {
          Statement e{StmtKind::Expression, {pos_, pos_}};
          e.expression = expression();
          expect(";");
          e.range.last = pos_;
          g.statements.push_back(add(std::move(e)));
        }
      } else {
        while (!is("case") && !is("default") && !is("}")) {
          if (eof()) fail("unterminated switch");
          g.statements.push_back(block_statement());
        }
      }
      g.range.last = pos_;
      for (auto c : g.statements) s.children.push_back(c);
      s.groups.push_back(std::move(g));
    }
    expect("}");
    s.range.last = pos_;
    s.expression_form = as_expression;
    return add(std::move(s));
  }

  // ------------------------------------------------------------- expressions

  std::size_t expression() { return assignment(); }

  [[nodiscard]] std::size_t assignment_width() const {
    static constexpr std::string_view kSimple[] = {
        "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};
    for (auto op : kSimple) {
      if (is(op)) return 1;
    }
    if (auto w = fused(">>>="); w) return w;
    if (auto w = fused(">>="); w) return w;
    return 0;
  }

  std::size_t assignment() {
    if (lambda_ahead()) return lambda();
    const std::size_t first = pos_;
    const std::size_t lhs = ternary();
    const std::size_t width = assignment_width();
    if (width == 0) return lhs;
    const auto lk = tree_.expressions[lhs].kind;
    if (lk != ExprKind::Name && lk != ExprKind::FieldAccess &&
        lk != ExprKind::ArrayAccess && lk != ExprKind::Parens) {
      fail("invalid assignment target");
    }
    const std::size_t op = pos_;
    pos_ += width;
    const std::size_t rhs = assignment();
    Expression e{ExprKind::Assign, {first, pos_}, op, width, {lhs, rhs}};
    return add(std::move(e));
  }

  [[nodiscard]] bool lambda_ahead() const {
    if (ident() && is("->", 1)) return true;
    if (!is("(")) return false;
    std::size_t depth = 0;
    for (std::size_t k = 0; !eof(k); ++k) {
      if (is("(", k)) {
        ++depth;
      } else if (is(")", k)) {
        if (--depth == 0) return is("->", k + 1);
      } else if (is(";", k) || is("{", k) || is("}", k)) {
        return false;
      }
    }
    return false;
  }

  std::size_t lambda() {
    const std::size_t first = pos_;
    if (ident()) {
      declare(pos_++, DeclKind::LambdaParam);
    } else {
      expect("(");
      if (!is(")")) {
        if (ident() && (is(",", 1) || is(")", 1))) {
          for (;;) {
            declare(expect_ident(), DeclKind::LambdaParam);
            if (!is(",")) break;
            ++pos_;
          }
        } else {
          for (;;) {
            modifiers();
            type();
            if (is("...")) ++pos_;
            declare(expect_ident(), DeclKind::LambdaParam);
            dims();
            if (!is(",")) break;
            ++pos_;
          }
        }
      }
      expect(")");
    }
    expect("->");
    Expression e{ExprKind::Lambda, {first, first}};
    if (is("{")) {
      e.statement = block();
    } else {
      e.children.push_back(expression());
    }
    e.range.last = pos_;
    return add(std::move(e));
  }

  std::size_t ternary() {
    const std::size_t first = pos_;
    const std::size_t cond = binary(1);
    if (!is("?")) return cond;
    const std::size_t op = pos_++;
    const std::size_t then = lambda_ahead() ? lambda() : ternary();
    expect(":");
    const std::size_t otherwise = lambda_ahead() ? lambda() : ternary();
    Expression e{ExprKind::Ternary, {first, pos_}, op, 1,
                 {cond, then, otherwise}};
    return add(std::move(e));
  }

  struct BinaryOp {
    int precedence = 0;
    std::size_t width = 0;
  };

  [[nodiscard]] BinaryOp peek_binary() const {
    if (eof() || kind() != TokenKind::Operator) {
      if (is("instanceof")) return {7, 1};
      return {};
    }
    const auto t = text();
    if (t == "||") return {1, 1};
    if (t == "&&") return {2, 1};
    if (t == "|") return {3, 1};
    if (t == "^") return {4, 1};
    if (t == "&") return {5, 1};
    if (t == "==" || t == "!=") return {6, 1};
    if (t == "<" || t == "<=") return {7, 1};
    if (t == "<<") return {8, 1};
    if (t == "+" || t == "-") return {9, 1};
    if (t == "*" || t == "/" || t == "%") return {10, 1};
    if (t == ">") {
      if (fused(">>>=") || fused(">>=")) return {};
      if (auto w = fused(">>>"); w) return {8, w};
      if (auto w = fused(">>"); w) return {8, w};
      if (auto w = fused(">="); w) return {7, w};
      return {7, 1};
    }
    return {};
  }

  std::size_t binary(int min_precedence) {
    const std::size_t first = pos_;
    std::size_t left = unary();
    for (;;) {
      const BinaryOp op = peek_binary();
      if (op.precedence == 0 || op.precedence < min_precedence) return left;
      if (is("instanceof")) {
        const std::size_t at = pos_++;
        if (is("final")) ++pos_;
        type();
        if (ident() && !is("->", 1)) declare(pos_++, DeclKind::PatternVar);
        Expression e{ExprKind::InstanceOf, {first, pos_}, at, 1, {left}};
        left = add(std::move(e));
        continue;
      }
      const std::size_t at = pos_;
      pos_ += op.width;
      const std::size_t right = binary(op.precedence + 1);
      Expression e{ExprKind::Binary, {first, pos_}, at, op.width,
                   {left, right}};
      left = add(std::move(e));
    }
  }

  [[nodiscard]] bool starts_operand() const {
    if (eof()) return false;
    if (ident() || literal()) return true;
    return is("(") || is("!") || is("~") || is("this") || is("super") ||
           is("new") || is("switch") || primitive() || is("void");
  }

  bool cast_ahead() {
    const auto cp = mark();
    bool result = false;
    try {
      ++pos_;
      const bool prim = primitive();
      type();
      while (is("&")) {
        ++pos_;
        type();
      }
      expect(")");
      if (prim) {
        result = !eof() && !is(")") && !is(";") && !is(",") &&
                 (starts_operand() || is("+") || is("-") || is("++") ||
                  is("--"));
      } else {
        result = starts_operand() || lambda_ahead();
      }
    } catch (const Failure&) {
      result = false;
    }
    reset(cp);
    return result;
  }

  std::size_t unary() {
    const std::size_t first = pos_;
    if (is("++") || is("--")) {
      ++pos_;
      const std::size_t operand = unary();
      return add(Expression{ExprKind::IncDec, {first, pos_}, first, 1,
                            {operand}});
    }
    if (is("+") || is("-") || is("!") || is("~")) {
      ++pos_;
      const std::size_t operand = unary();
      return add(Expression{ExprKind::Unary, {first, pos_}, first, 1,
                            {operand}});
    }
    if (is("(") && cast_ahead()) {
      ++pos_;
      type();
      while (is("&")) {
        ++pos_;
        type();
      }
      expect(")");
      const std::size_t operand = lambda_ahead() ? lambda() : unary();
      return add(Expression{ExprKind::Cast, {first, pos_}, kNone, 0,
                            {operand}});
    }
    std::size_t e = postfix();
    while (is("++") || is("--")) {
      const std::size_t op = pos_++;
      e = add(Expression{ExprKind::IncDec, {first, pos_}, op, 1, {e}});
    }
    return e;
  }

  std::vector<std::size_t> arguments() {
    expect("(");
    std::vector<std::size_t> args;
    if (!is(")")) {
      for (;;) {
        args.push_back(expression());
        if (!is(",")) break;
        ++pos_;
      }
    }
    expect(")");
    return args;
  }

  std::size_t postfix() {
    const std::size_t first = pos_;
    std::size_t e = primary();
    for (;;) {
      if (is(".")) {
        ++pos_;
        if (is("new")) {
          const std::size_t inner = creator();
          e = add(Expression{ExprKind::New, {first, pos_}, kNone, 0,
                             {e, inner}});
        } else if (is("this") || is("class") || is("super")) {
          const bool cls = is("class");
          ++pos_;
          e = add(Expression{cls ? ExprKind::ClassLiteral
                                 : ExprKind::FieldAccess,
                             {first, pos_}, kNone, 0, {e}});
        } else {
          if (is("<")) type_arguments();
          expect_ident();
          if (is("(")) {
            auto args = arguments();
            args.insert(args.begin(), e);
            e = add(Expression{ExprKind::Call, {first, pos_}, kNone, 0,
                               std::move(args)});
          } else {
            e = add(Expression{ExprKind::FieldAccess, {first, pos_}, kNone, 0,
                               {e}});
          }
        }
      } else if (is("[")) {
        if (is("]", 1)) {
          dims();
          if (is(".") && is("class", 1)) {
            pos_ += 2;
            e = add(Expression{ExprKind::ClassLiteral, {first, pos_}, kNone,
                               0, {e}});
          } else if (is("::")) {
            continue;
          } else {
            fail("expected '.class' or '::'");
          }
        } else {
          ++pos_;
          const std::size_t index = expression();
          expect("]");
          e = add(Expression{ExprKind::ArrayAccess, {first, pos_}, kNone, 0,
                             {e, index}});
        }
      } else if (is("::")) {
        ++pos_;
        if (is("<")) type_arguments();
        if (is("new")) {
          ++pos_;
        } else {
          expect_ident();
        }
        e = add(Expression{ExprKind::MethodRef, {first, pos_}, kNone, 0,
                           {e}});
      } else {
        return e;
      }
    }
  }

  std::size_t primary() {
    const std::size_t first = pos_;
    if (eof()) fail("expected expression");
    if (literal()) {
      ++pos_;
      return add(Expression{ExprKind::Literal, {first, pos_}});
    }
    if (is("this") || is("super")) {
      const bool self = is("this");
      ++pos_;
      if (is("(")) {
        auto args = arguments();
        return add(Expression{ExprKind::Call, {first, pos_}, kNone, 0,
                              std::move(args)});
      }
      return add(Expression{self ? ExprKind::This : ExprKind::Super,
                            {first, pos_}});
    }
    if (is("(")) {
      ++pos_;
      const std::size_t inner = expression();
      expect(")");
      return add(Expression{ExprKind::Parens, {first, pos_}, kNone, 0,
                            {inner}});
    }
    if (is("new")) return creator();
    if (is("switch")) {
      Expression e{ExprKind::Switch, {first, first}};
      e.statement = switch_construct(true);
      e.range.last = pos_;
      return add(std::move(e));
    }
    if (primitive() || is("void")) {
      ++pos_;
      dims();
      if (is(".") && is("class", 1)) {
        pos_ += 2;
        return add(Expression{ExprKind::ClassLiteral, {first, pos_}});
      }
      if (is("::")) {
        ++pos_;
        expect("new");
        return add(Expression{ExprKind::MethodRef, {first, pos_}});
      }
      fail("expected '.class'");
    }
    if (ident()) {
      ++pos_;
      if (is("(")) {
        auto args = arguments();
        return add(Expression{ExprKind::Call, {first, pos_}, kNone, 0,
                              std::move(args)});
      }
      return add(Expression{ExprKind::Name, {first, pos_}});
    }
    fail("expected expression");
  }

  std::size_t creator() {
    const std::size_t first = pos_;
    expect("new");
    if (is("<")) type_arguments();
    skip_annotations();
    if (primitive()) {
      ++pos_;
    } else {
      class_type();
    }
    std::vector<std::size_t> children;
    if (is("[")) {
      bool open_dims = false;
      while (is("[") || (is("@") && !open_dims)) {
        skip_annotations();
        if (is("]", 1)) {
          pos_ += 2;
          open_dims = true;
        } else {
          if (open_dims) fail("expected ']'");
          ++pos_;
          children.push_back(expression());
          expect("]");
        }
      }
      if (is("{")) {
        if (!children.empty()) fail("unexpected array initializer");
        children.push_back(array_initializer());
      } else if (children.empty()) {
        fail("array dimension missing");
      }
    } else {
      children = arguments();
      if (is("{")) class_body(false);
    }
    return add(Expression{ExprKind::New, {first, pos_}, kNone, 0,
                          std::move(children)});
  }

  std::size_t array_initializer() {
    const std::size_t first = pos_;
    expect("{");
    std::vector<std::size_t> children;
    while (!is("}")) {
      children.push_back(is("{") ? array_initializer() : expression());
      if (!is(",")) break;
      ++pos_;
    }
    expect("}");
    return add(Expression{ExprKind::ArrayInit, {first, pos_}, kNone, 0,
                          std::move(children)});
  }

  std::string_view source_;
  const std::vector<Token>& tokens_;
  std::vector<std::size_t> significant_;
  std::size_t pos_ = 0;
  SyntaxTree tree_;
};

}  // namespace codeattack::syntax
