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
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codeattack::syntax {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  Literal,
  Operator,
  Whitespace,
  Comment,
};

struct Token {
  TokenKind kind;
  std::size_t begin;  // byte offset into the source
  std::size_t end;

  [[nodiscard]] std::size_t size() const { return end - begin; }
  [[nodiscard]] bool is_trivia() const {
    return kind == TokenKind::Whitespace || kind == TokenKind::Comment;
  }
};

/// A lexing or parsing failure, positioned at a 1-based line and column.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line_(line),
        column_(column) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Reserved words, plus the literal names true/false/null (lexed as literals).
inline constexpr std::array<std::string_view, 51> kJavaKeywords = {
    "abstract",   "assert",    "boolean",  "break",      "byte",
    "case",       "catch",     "char",     "class",      "const",
    "continue",   "default",   "do",       "double",     "else",
    "enum",       "extends",   "final",    "finally",    "float",
    "for",        "goto",      "if",       "implements", "import",
    "instanceof", "int",       "interface", "long",      "native",
    "new",        "package",   "private",  "protected",  "public",
    "return",     "short",     "static",   "strictfp",   "super",
    "switch",     "synchronized", "this",  "throw",      "throws",
    "transient",  "try",       "void",     "volatile",   "while",
    "_"};

inline bool is_keyword(std::string_view word) {
  return std::find(kJavaKeywords.begin(), kJavaKeywords.end(), word) !=
         kJavaKeywords.end();
}

inline bool is_literal_name(std::string_view word) {
  return word == "true" || word == "false" || word == "null";
}

/// Names that are never acceptable as a replacement identifier: reserved
/// words, literal names, and the contextual keywords that change parsing.
inline bool is_reserved_name(std::string_view word) {
  static constexpr std::array<std::string_view, 7> kContextual = {
      "var", "yield", "record", "sealed", "permits", "non-sealed", "when"};
  return is_keyword(word) || is_literal_name(word) ||
         std::find(kContextual.begin(), kContextual.end(), word) !=
             kContextual.end();
}

namespace detail {

inline bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}

inline bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

inline bool is_hex_digit(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

// Longest-match operator table. Anything starting with '>' is deliberately
// absent: '>' is always emitted alone so nested generics close cleanly, and
// the parser fuses adjacent '>' / '=' tokens into shift and comparison
// operators.
inline constexpr std::array<std::string_view, 38> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "+=", "-=",
    "*=",  "/=",  "%=", "&=", "|=", "^=", "<<", "<=", "==", "!=",
    "(",   ")",   "{",  "}",  "[",  "]",  ";",  ",",  ".",  "@",
    "=",   "<",   "!",  "~",  "?",  ":",  "+",  "-"};
inline constexpr std::string_view kSingleOperators = "*/&|^%>";

}  // namespace detail

/// Maps byte offsets to 1-based line/column pairs.
class LineIndex {
 public:
  explicit LineIndex(std::string_view source) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < source.size(); ++i) {
      if (source[i] == '\n') starts_.push_back(i + 1);
    }
  }

  [[nodiscard]] std::pair<std::size_t, std::size_t> locate(
      std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    const auto line = static_cast<std::size_t>(it - starts_.begin());
    return {line, offset - starts_[line - 1] + 1};
  }

 private:
  std::vector<std::size_t> starts_;
};

/// Lossless Java tokenizer: the concatenation of every token's bytes is the
/// input, trivia included.
inline std::vector<Token> tokenize(std::string_view src) {
  using detail::is_digit;
  using detail::is_hex_digit;
  using detail::is_ident_part;
  using detail::is_ident_start;

  std::vector<Token> out;
  out.reserve(src.size() / 3 + 1);
  const std::size_t n = src.size();
  std::size_t i = 0;

  auto fail = [&](const std::string& what, std::size_t at) -> void {
    const auto [line, col] = LineIndex(src).locate(at);
    throw SyntaxError(what, line, col);
  };
  auto at = [&](std::size_t k) -> unsigned char {
    return k < n ? static_cast<unsigned char>(src[k]) : '\0';
  };

  while (i < n) {
    const std::size_t start = i;
    const unsigned char c = at(i);

    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
      while (i < n && (at(i) == ' ' || at(i) == '\t' || at(i) == '\n' ||
                       at(i) == '\r' || at(i) == '\f')) {
        ++i;
      }
      out.push_back({TokenKind::Whitespace, start, i});
      continue;
    }

    if (c == '/' && at(i + 1) == '/') {
      while (i < n && at(i) != '\n') ++i;
      out.push_back({TokenKind::Comment, start, i});
      continue;
    }
    if (c == '/' && at(i + 1) == '*') {
      const auto close = src.find("*/", i + 2);
      if (close == std::string_view::npos) fail("unterminated comment", start);
      i = close + 2;
      out.push_back({TokenKind::Comment, start, i});
      continue;
    }

    if (is_ident_start(c)) {
      while (i < n && is_ident_part(at(i))) ++i;
      const auto word = src.substr(start, i - start);
      TokenKind kind = TokenKind::Identifier;
      if (is_literal_name(word)) {
        kind = TokenKind::Literal;
      } else if (is_keyword(word)) {
        kind = TokenKind::Keyword;
      }
      out.push_back({kind, start, i});
      continue;
    }

    if (is_digit(c) || (c == '.' && is_digit(at(i + 1)))) {
      if (c == '0' && (at(i + 1) == 'x' || at(i + 1) == 'X')) {
        i += 2;
        while (is_hex_digit(at(i)) || at(i) == '_') ++i;
        if (at(i) == '.') {
          ++i;
          while (is_hex_digit(at(i)) || at(i) == '_') ++i;
        }
        if (at(i) == 'p' || at(i) == 'P') {
          ++i;
          if (at(i) == '+' || at(i) == '-') ++i;
          while (is_digit(at(i))) ++i;
        }
      } else if (c == '0' && (at(i + 1) == 'b' || at(i + 1) == 'B')) {
        i += 2;
        while (at(i) == '0' || at(i) == '1' || at(i) == '_') ++i;
      } else {
        while (is_digit(at(i)) || at(i) == '_') ++i;
        if (at(i) == '.' && is_digit(at(i + 1))) {
          ++i;
          while (is_digit(at(i)) || at(i) == '_') ++i;
        } else if (at(i) == '.' && !is_ident_start(at(i + 1)) &&
                   at(i + 1) != '.') {
          ++i;  // "1." is a valid double literal
        }
        if (at(i) == 'e' || at(i) == 'E') {
          ++i;
          if (at(i) == '+' || at(i) == '-') ++i;
          if (!is_digit(at(i))) fail("malformed exponent", start);
          while (is_digit(at(i)) || at(i) == '_') ++i;
        }
      }
      if (std::string_view("lLfFdD").find(static_cast<char>(at(i))) !=
              std::string_view::npos &&
          at(i) != '\0') {
        ++i;
      }
      if (is_ident_part(at(i))) fail("malformed number", start);
      out.push_back({TokenKind::Literal, start, i});
      continue;
    }

    if (c == '"' && at(i + 1) == '"' && at(i + 2) == '"') {
      i += 3;
      bool closed = false;
      while (i < n) {
        if (at(i) == '\\') {
          i += 2;
          continue;
        }
        if (at(i) == '"' && at(i + 1) == '"' && at(i + 2) == '"') {
          i += 3;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed) fail("unterminated text block", start);
      out.push_back({TokenKind::Literal, start, i});
      continue;
    }

    if (c == '"' || c == '\'') {
      ++i;
      bool closed = false;
      while (i < n && at(i) != '\n') {
        if (at(i) == '\\') {
          i += 2;
          continue;
        }
        if (at(i) == c) {
          ++i;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed) {
        fail(c == '"' ? "unterminated string literal"
                      : "unterminated character literal",
             start);
      }
      out.push_back({TokenKind::Literal, start, i});
      continue;
    }

    bool matched = false;
    for (auto op : detail::kOperators) {
      if (src.substr(i, op.size()) == op) {
        i += op.size();
        matched = true;
        break;
      }
    }
    if (!matched && detail::kSingleOperators.find(static_cast<char>(c)) !=
                        std::string_view::npos) {
      ++i;
      // compound assignment forms of the single-character operators
      if (c != '>' && at(i) == '=') ++i;
      matched = true;
    }
    if (!matched) fail("unexpected character", start);
    out.push_back({TokenKind::Operator, start, i});
  }
  return out;
}

/// Concatenates token bytes; the inverse of tokenize.
inline std::string render(std::string_view src,
                          const std::vector<Token>& tokens) {
  std::string out;
  out.reserve(src.size());
  for (const auto& t : tokens) out.append(src.substr(t.begin, t.size()));
  return out;
}

}  // namespace codeattack::syntax
