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

// Independent checks for rewrites: a generator of boolean-flag methods and a
// token-level undo of BoolFlipPropagate.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "codeattack/codeattack.hpp"

namespace oracles {

/// A method with one `boolean flag` local used in varied read and write
/// positions.
inline std::string bool_flag_method(std::mt19937_64& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const char* pieces[] = {
      "if (flag) { a++; }",
      "while (!flag && a < b) { a++; flag = a > 10; }",
      "flag = a > b || flag;",
      "b += flag ? 1 : 2;",
      "System.out.println(flag);",
      "if (a > b) flag = false;",
      "g(flag, a);",
      "for (int i = 0; i < b && flag; i++) { a--; }",
      "flag = !flag;",
      "do { a += 2; } while (flag == (a < b));",
  };
  std::string body = std::string("boolean flag = ") + (pick(2) ? "true" : "false") + ";";
  const int n = 1 + pick(5);
  for (int i = 0; i < n; ++i) body += " " + std::string(pieces[pick(10)]);
  int tail = pick(3);
  if (tail == 0) body += " return flag;";
  else if (tail == 1) body += " return !flag;";
  else body += " return a > b;";
  return "boolean m" + std::to_string(pick(1000)) + "(int a, int b) { " + body + " }";
}

/// Undoes the expected rewrite of `name` in `variant` and compares with
/// `original` token by token: `(!x)` reads back to `x`, `x = !(e)` back to
/// `x = e`, and the initializer literal flipped back. Also requires every
/// read and every write of `x` to have been rewritten.
inline bool bool_flip_consistent(const std::string& original,
                                 const std::string& variant,
                                 const std::string& name) {
  auto lex = [](const std::string& code) {
    const auto s = codeattack::parse(code);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.token_count(); ++i) out.emplace_back(s.sig(i));
    return out;
  };
  const auto o = lex(original);
  auto v = lex(variant);

  std::size_t reads = 0, writes = 0;
  std::vector<std::string> undone;
  std::vector<int> close_to_drop;  // depth markers for rewritten rhs parens
  int depth = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 3 < v.size() && v[i] == "(" && v[i + 1] == "!" && v[i + 2] == name &&
        v[i + 3] == ")") {
      undone.push_back(name);
      ++reads;
      i += 3;
      continue;
    }
    if (i >= 2 && v[i - 2] == name && v[i - 1] == "=" && i + 1 < v.size() &&
        v[i] == "!" && v[i + 1] == "(") {
      ++writes;
      ++depth;
      close_to_drop.push_back(depth);
      ++i;
      continue;
    }
    if (v[i] == "(") ++depth;
    if (v[i] == ")") {
      if (!close_to_drop.empty() && close_to_drop.back() == depth) {
        close_to_drop.pop_back();
        --depth;
        continue;
      }
      --depth;
    }
    undone.push_back(v[i]);
  }
  // Flip the declaration literal back.
  bool flipped = false;
  for (std::size_t i = 0; i + 3 < undone.size(); ++i) {
    if (undone[i] == "boolean" && undone[i + 1] == name && undone[i + 2] == "=") {
      auto& lit = undone[i + 3];
      if (lit != "true" && lit != "false") return false;
      lit = lit == "true" ? "false" : "true";
      flipped = true;
      break;
    }
  }
  if (!flipped || undone != o) return false;

  std::size_t occurrences = 0, assignments = 0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (o[i] != name) continue;
    ++occurrences;
    if (i + 1 < o.size() && o[i + 1] == "=" && !(i > 0 && o[i - 1] == "boolean")) {
      ++assignments;
    }
  }
  return writes == assignments && reads + writes + 1 == occurrences;
}

}  // namespace oracles
