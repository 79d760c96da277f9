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
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "codeattack/syntax/lexer.hpp"
#include "codeattack/syntax/parser.hpp"
#include "codeattack/syntax/tree.hpp"

namespace codeattack {

/// Statement context of an identifier occurrence.
enum class StatementKind : std::uint8_t {
  Method,
  Return,
  If,
  Throw,
  Try,
  For,
  Others,
};

inline constexpr std::array<StatementKind, 7> kStatementKinds = {
    StatementKind::Method, StatementKind::Return, StatementKind::If,
    StatementKind::Throw,  StatementKind::Try,    StatementKind::For,
    StatementKind::Others};

inline std::string_view to_string(StatementKind kind) {
  switch (kind) {
    case StatementKind::Method: return "Method";
    case StatementKind::Return: return "Return";
    case StatementKind::If: return "If";
    case StatementKind::Throw: return "Throw";
    case StatementKind::Try: return "Try";
    case StatementKind::For: return "For";
    case StatementKind::Others: return "Others";
  }
  return "Others";
}

inline std::optional<StatementKind> parse_statement_kind(std::string_view s) {
  for (auto k : kStatementKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

struct Span {
  std::size_t begin;
  std::size_t end;
  friend bool operator==(const Span&, const Span&) = default;
};

/// Rejected rename: the precondition that failed is the message.
class RenameError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Identifier lexical rule for generated names: a letter or underscore
/// followed by letters, digits, or underscores.
inline bool is_identifier_text(std::string_view name) {
  if (name.empty()) return false;
  auto letter = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!letter(name.front())) return false;
  return std::all_of(name.begin(), name.end(), [&](char c) {
    return letter(c) || (c >= '0' && c <= '9');
  });
}

/// Ordered original -> replacement pairs. Recording an original a second time
/// updates its replacement in place.
class ReplacementMap {
 public:
  using Entry = std::pair<std::string, std::string>;

  void record(const std::string& original, const std::string& replacement) {
    for (auto& e : entries_) {
      if (e.first == original) {
        e.second = replacement;
        return;
      }
    }
    entries_.emplace_back(original, replacement);
  }

  [[nodiscard]] std::optional<std::string> replacement(
      std::string_view original) const {
    for (const auto& e : entries_) {
      if (e.first == original) return e.second;
    }
    return std::nullopt;
  }

  /// The name `original` currently carries in the perturbed code.
  [[nodiscard]] std::string current_name(const std::string& original) const {
    auto r = replacement(original);
    return r ? *r : original;
  }

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }

  /// Number of entries whose replacement differs from the original.
  [[nodiscard]] std::size_t changed() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(),
                      [](const Entry& e) { return e.first != e.second; }));
  }

  friend bool operator==(const ReplacementMap&, const ReplacementMap&) = default;

 private:
  std::vector<Entry> entries_;
};

/// An immutable parsed Java unit: lossless tokens, the renameable identifier
/// index, and the statement context of every occurrence. Cheap to copy.
class CodeSnippet {
 public:
  struct Identifier {
    std::string name;
    std::vector<std::size_t> tokens;  // indices into tokens()
    std::vector<Span> spans;
    std::vector<StatementKind> occurrence_kinds;
    std::set<StatementKind> contexts;
  };

  [[nodiscard]] const std::string& source() const { return data_->source; }
  [[nodiscard]] const std::vector<syntax::Token>& tokens() const {
    return data_->tokens;
  }
  [[nodiscard]] std::string_view lexeme(std::size_t token) const {
    const auto& t = data_->tokens[token];
    return std::string_view(data_->source).substr(t.begin, t.size());
  }

  /// Token-vector index of each significant (non-trivia) token.
  [[nodiscard]] const std::vector<std::size_t>& significant() const {
    return data_->significant;
  }
  /// Lexeme of the i-th significant token.
  [[nodiscard]] std::string_view sig(std::size_t i) const {
    return lexeme(data_->significant[i]);
  }
  [[nodiscard]] syntax::TokenKind sig_kind(std::size_t i) const {
    return data_->tokens[data_->significant[i]].kind;
  }
  [[nodiscard]] Span sig_span(syntax::TokenRange r) const {
    if (r.empty()) {
      const std::size_t at =
          r.first < data_->significant.size()
              ? data_->tokens[data_->significant[r.first]].begin
              : data_->source.size();
      return {at, at};
    }
    return {data_->tokens[data_->significant[r.first]].begin,
            data_->tokens[data_->significant[r.last - 1]].end};
  }
  [[nodiscard]] std::string_view text(syntax::TokenRange r) const {
    const Span s = sig_span(r);
    return std::string_view(data_->source).substr(s.begin, s.end - s.begin);
  }

  [[nodiscard]] const syntax::SyntaxTree& tree() const { return data_->tree; }

  /// Renameable identifiers in first-occurrence order.
  [[nodiscard]] const std::vector<std::string>& identifiers() const {
    return data_->order;
  }
  [[nodiscard]] bool has_identifier(std::string_view name) const {
    return data_->index.find(std::string(name)) != data_->index.end();
  }
  [[nodiscard]] const Identifier& identifier(std::string_view name) const {
    auto it = data_->index.find(std::string(name));
    if (it == data_->index.end()) {
      throw std::out_of_range("unknown identifier: " + std::string(name));
    }
    return it->second;
  }
  [[nodiscard]] const std::vector<Span>& occurrences(
      std::string_view name) const {
    return identifier(name).spans;
  }
  [[nodiscard]] const std::set<StatementKind>& context_of(
      std::string_view name) const {
    return identifier(name).contexts;
  }

  /// True when any identifier token in the unit (renameable or not) is
  /// spelled `name`.
  [[nodiscard]] bool uses_name(std::string_view name) const {
    return data_->all_names.count(std::string(name)) > 0;
  }
  [[nodiscard]] const std::set<std::string>& all_names() const {
    return data_->all_names;
  }

  /// Number of significant tokens.
  [[nodiscard]] std::size_t token_count() const {
    return data_->significant.size();
  }

  /// Declared name of the first method, if any.
  [[nodiscard]] std::optional<std::string> method_name() const {
    for (const auto& m : data_->tree.methods) {
      if (!m.is_constructor) return std::string(sig(m.name));
    }
    return std::nullopt;
  }

  friend CodeSnippet parse(std::string source);

 private:
  struct Data {
    std::string source;
    std::vector<syntax::Token> tokens;
    std::vector<std::size_t> significant;
    syntax::SyntaxTree tree;
    std::vector<std::string> order;
    std::map<std::string, Identifier> index;
    std::set<std::string> all_names;
  };

  explicit CodeSnippet(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

namespace detail {

inline std::optional<StatementKind> tracked_kind(syntax::StmtKind k) {
  using syntax::StmtKind;
  switch (k) {
    case StmtKind::Return: return StatementKind::Return;
    case StmtKind::If: return StatementKind::If;
    case StmtKind::Throw: return StatementKind::Throw;
    case StmtKind::Try: return StatementKind::Try;
    case StmtKind::For:
    case StmtKind::ForEach: return StatementKind::For;
    default: return std::nullopt;
  }
}

}  // namespace detail

/// Parses a compilation unit or a bare member sequence. Throws
/// syntax::SyntaxError carrying line and column on invalid input.
inline CodeSnippet parse(std::string source) {
  using syntax::DeclKind;
  auto data = std::make_shared<CodeSnippet::Data>();
  data->source = std::move(source);
  data->tokens = syntax::tokenize(data->source);
  syntax::Parser parser(data->source, data->tokens);
  data->tree = parser.parse();
  data->significant = parser.significant();

  const auto& sig = data->significant;
  const auto& tree = data->tree;
  auto text = [&](std::size_t i) -> std::string_view {
    if (i >= sig.size()) return {};
    const auto& t = data->tokens[sig[i]];
    return std::string_view(data->source).substr(t.begin, t.size());
  };

  // Statement-context regions; Method regions win regardless of nesting.
  struct Region {
    syntax::TokenRange range;
    StatementKind kind;
  };
  std::vector<Region> regions;
  for (const auto& s : tree.statements) {
    if (auto k = detail::tracked_kind(s.kind)) regions.push_back({s.range, *k});
  }
  std::vector<syntax::TokenRange> method_regions;
  for (const auto& m : tree.methods) {
    method_regions.push_back({m.name, m.name + 1});
    if (!m.params.empty()) method_regions.push_back(m.params);
  }
  auto classify = [&](std::size_t s) {
    for (const auto& r : method_regions) {
      if (r.contains(s)) return StatementKind::Method;
    }
    const Region* best = nullptr;
    for (const auto& r : regions) {
      if (!r.range.contains(s)) continue;
      if (best == nullptr || r.range.first > best->range.first ||
          (r.range.first == best->range.first &&
           r.range.last < best->range.last)) {
        best = &r;
      }
    }
    return best ? best->kind : StatementKind::Others;
  };

  std::set<std::string> method_names;
  std::set<std::string> variable_names;
  std::unordered_set<std::size_t> fixed_decl_tokens;
  for (const auto& d : tree.declarations) {
    const std::string name(text(d.name));
    switch (d.kind) {
      case DeclKind::Method: {
        const auto it = std::find_if(
            tree.methods.begin(), tree.methods.end(),
            [&](const syntax::MethodInfo& m) { return m.name == d.name; });
        const bool entry_point = name == "main" && it != tree.methods.end() &&
                                 it->is_static;
        const bool overrides = it != tree.methods.end() && it->overrides;
        if (!entry_point && !overrides) {
          method_names.insert(name);
        } else {
          fixed_decl_tokens.insert(d.name);
        }
        break;
      }
      case DeclKind::Parameter:
      case DeclKind::Local:
      case DeclKind::Field:
      case DeclKind::CatchParam:
      case DeclKind::LambdaParam:
      case DeclKind::PatternVar:
      case DeclKind::Resource:
        variable_names.insert(name);
        break;
      default:
        fixed_decl_tokens.insert(d.name);
        break;
    }
  }
  // A name that is also an overriding or entry-point method stays fixed.
  for (const auto& d : tree.declarations) {
    if (d.kind == DeclKind::Method && fixed_decl_tokens.count(d.name)) {
      method_names.erase(std::string(text(d.name)));
    }
  }

  for (std::size_t s = 0; s < sig.size(); ++s) {
    const auto& tok = data->tokens[sig[s]];
    if (tok.kind != syntax::TokenKind::Identifier) continue;
    const std::string name(text(s));
    data->all_names.insert(name);
    if (fixed_decl_tokens.count(s)) continue;
    const bool as_method = method_names.count(name) > 0;
    const bool as_variable = variable_names.count(name) > 0;
    if (!as_method && !as_variable) continue;

    const std::string_view prev = s > 0 ? text(s - 1) : std::string_view{};
    const std::string_view next = text(s + 1);
    bool include = false;
    if (prev == "." ) {
      include = s >= 2 && text(s - 2) == "this" && (next == "(" ? as_method
                                                                : as_variable);
    } else if (prev == "@" || prev == "break" || prev == "continue") {
      include = false;
    } else if (prev == "::") {
      include = as_method;
    } else if (next == "(") {
      include = as_method;
    } else if (next == ":" && (s == 0 || prev == ";" || prev == "{" ||
                               prev == "}")) {
      include = false;  // statement label
    } else {
      include = as_variable;
    }
    if (!include) continue;

    auto [it, inserted] = data->index.try_emplace(name);
    auto& id = it->second;
    if (inserted) {
      id.name = name;
      data->order.push_back(name);
    }
    const StatementKind k = classify(s);
    id.tokens.push_back(sig[s]);
    id.spans.push_back({tok.begin, tok.end});
    id.occurrence_kinds.push_back(k);
    id.contexts.insert(k);
  }
  return CodeSnippet(std::move(data));
}

/// Checks the rename preconditions; returns the violated rule or nullopt.
inline std::optional<std::string> rename_violation(const CodeSnippet& snippet,
                                                   std::string_view old_name,
                                                   std::string_view new_name) {
  if (!snippet.has_identifier(old_name)) {
    return "'" + std::string(old_name) + "' is not a renameable identifier";
  }
  if (!is_identifier_text(new_name)) {
    return "'" + std::string(new_name) + "' is not a valid identifier";
  }
  if (syntax::is_reserved_name(new_name)) {
    return "'" + std::string(new_name) + "' is a reserved word";
  }
  if (snippet.uses_name(new_name)) {
    return "'" + std::string(new_name) + "' collides with an existing name";
  }
  return std::nullopt;
}

/// Rewrites all and only the occurrences of `old_name`. Throws RenameError
/// when a precondition fails; the input snippet is never modified.
inline CodeSnippet rename(const CodeSnippet& snippet, std::string_view old_name,
                          std::string_view new_name) {
  if (auto why = rename_violation(snippet, old_name, new_name)) {
    throw RenameError(*why);
  }
  const auto& id = snippet.identifier(old_name);
  std::string out;
  out.reserve(snippet.source().size() + id.spans.size() * new_name.size());
  std::size_t cursor = 0;
  for (const auto& span : id.spans) {
    out.append(snippet.source(), cursor, span.begin - cursor);
    out.append(new_name);
    cursor = span.end;
  }
  out.append(snippet.source(), cursor, std::string::npos);

  CodeSnippet result = [&] {
    try {
      return parse(std::move(out));
    } catch (const syntax::SyntaxError& e) {
      throw RenameError(std::string("rename broke the syntax: ") + e.what());
    }
  }();
  if (result.tokens().size() != snippet.tokens().size() ||
      !result.has_identifier(new_name) ||
      result.occurrences(new_name).size() != id.spans.size()) {
    throw RenameError("rename of '" + std::string(old_name) +
                      "' changed the identifier structure");
  }
  return result;
}

using StatementGroups =
    std::vector<std::pair<StatementKind, std::vector<std::string>>>;

/// Identifiers per statement kind, in Method..Others order. An identifier is
/// listed under every kind in which it occurs; group order follows first
/// occurrence.
inline StatementGroups statement_groups(const CodeSnippet& snippet) {
  StatementGroups groups;
  for (auto kind : kStatementKinds) {
    std::vector<std::string> names;
    for (const auto& name : snippet.identifiers()) {
      if (snippet.context_of(name).count(kind)) names.push_back(name);
    }
    groups.emplace_back(kind, std::move(names));
  }
  return groups;
}

inline const std::vector<std::string>& group_of(const StatementGroups& groups,
                                                StatementKind kind) {
  for (const auto& [k, names] : groups) {
    if (k == kind) return names;
  }
  static const std::vector<std::string> kEmpty;
  return kEmpty;
}

}  // namespace codeattack
