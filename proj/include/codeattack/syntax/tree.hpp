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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace codeattack::syntax {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Half-open range of significant-token indices.
struct TokenRange {
  std::size_t first = 0;
  std::size_t last = 0;

  [[nodiscard]] bool empty() const { return first >= last; }
  [[nodiscard]] bool contains(std::size_t i) const {
    return i >= first && i < last;
  }
  [[nodiscard]] std::size_t size() const { return empty() ? 0 : last - first; }
};

enum class ExprKind : std::uint8_t {
  Name,
  Literal,
  This,
  Super,
  Parens,
  Binary,
  InstanceOf,
  Unary,      // prefix + - ! ~
  IncDec,     // prefix or postfix ++ / --
  Assign,     // = and compound forms
  Ternary,
  Cast,
  Call,
  FieldAccess,
  ArrayAccess,
  New,
  ArrayInit,
  Lambda,
  MethodRef,
  ClassLiteral,
  Switch,
};

struct Expression {
  ExprKind kind;
  TokenRange range;
  std::size_t op = kNone;     // first token of the operator, when any
  std::size_t op_width = 0;   // tokens forming the operator (">>" spans two)
  std::vector<std::size_t> children;
  std::size_t statement = kNone;  // Switch expression / lambda block body
};

enum class StmtKind : std::uint8_t {
  Block,
  LocalVar,
  LocalType,
  Expression,
  If,
  For,
  ForEach,
  While,
  Do,
  Try,
  Switch,
  Return,
  Throw,
  Break,
  Continue,
  Yield,
  Synchronized,
  Labeled,
  Assert,
  Empty,
};

struct Declarator {
  std::size_t name = kNone;         // significant-token index
  std::size_t initializer = kNone;  // expression index
};

struct SwitchGroup {
  TokenRange range;
  std::vector<std::size_t> labels;  // expression indices
  bool is_default = false;
  bool arrow = false;
  std::vector<std::size_t> statements;
};

struct Statement {
  StmtKind kind;
  TokenRange range;
  // Nested statements in source order. If: then[, else]. Loops: body.
  // Try: try block, catch blocks, finally block. Block: its statements.
  std::vector<std::size_t> children;
  std::size_t condition = kNone;   // If, While, Do, For (may be absent)
  std::size_t expression = kNone;  // Expression/Return/Throw/Yield/Switch
  TokenRange init;                 // For
  TokenRange update;               // For
  TokenRange type;                 // LocalVar, ForEach variable type
  std::vector<Declarator> declarators;
  std::vector<SwitchGroup> groups;
  bool has_else = false;
  bool has_resources = false;
  bool expression_form = false;  // switch used as an expression
};

enum class DeclKind : std::uint8_t {
  Method,
  Constructor,
  Parameter,
  Local,
  Field,
  CatchParam,
  LambdaParam,
  PatternVar,
  Resource,
  RecordComponent,
  Type,
  TypeParam,
  EnumConstant,
};

struct Declaration {
  std::size_t name;  // significant-token index
  DeclKind kind;
};

struct MethodInfo {
  std::size_t name = kNone;
  TokenRange params;  // includes the parentheses
  std::size_t body = kNone;  // Block statement index
  bool is_constructor = false;
  bool overrides = false;  // carries @Override
  bool is_static = false;
};

/// Structural summary of one parsed unit. Indices refer to the parser's
/// significant-token sequence.
struct SyntaxTree {
  std::vector<Expression> expressions;
  std::vector<Statement> statements;
  std::vector<Declaration> declarations;
  std::vector<MethodInfo> methods;
};

}  // namespace codeattack::syntax
