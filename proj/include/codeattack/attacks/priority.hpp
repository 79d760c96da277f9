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
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codeattack/syntax/snippet.hpp"
#include "codeattack/types.hpp"

namespace codeattack {

/// Ordered statement kinds with per-kind iteration weights in (0, 1].
struct PriorityTable {
  std::vector<std::pair<StatementKind, double>> entries;

  /// Throws std::invalid_argument on duplicate kinds, weights outside
  /// (0, 1], or a first weight other than 1.
  void validate() const {
    if (entries.empty()) throw std::invalid_argument("empty priority table");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& [kind, w] = entries[i];
      if (!(w > 0.0 && w <= 1.0)) {
        throw std::invalid_argument("weight of " + std::string(to_string(kind)) +
                                    " must be in (0, 1]");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (entries[j].first == kind) {
          throw std::invalid_argument("duplicate kind " +
                                      std::string(to_string(kind)));
        }
      }
    }
    if (entries.front().second != 1.0) {
      throw std::invalid_argument("the first kind must have weight 1");
    }
  }

  friend bool operator==(const PriorityTable&, const PriorityTable&) = default;
};

/// Attack success rates per statement kind when perturbing three
/// identifiers with MHM, by task (percent).
struct KindRate {
  StatementKind kind;
  double asr;
};

inline std::vector<KindRate> context_asr(TaskKind task) {
  using K = StatementKind;
  switch (task) {
    case TaskKind::CloneDetection:
      return {{K::Method, 17.90}, {K::Return, 11.26}, {K::If, 23.37},
              {K::Throw, 13.39},  {K::Try, 23.89},    {K::For, 26.05}};
    case TaskKind::VulnerabilityDetection:
      return {{K::Method, 19.81}, {K::Return, 10.60}, {K::If, 21.07},
              {K::Throw, 7.37},   {K::Try, 15.24},    {K::For, 18.40}};
    case TaskKind::CodeSummarization:
      return {{K::Method, 88.81}, {K::Return, 29.77}, {K::If, 32.40},
              {K::Throw, 27.12},  {K::Try, 30.77},    {K::For, 35.14}};
  }
  return {};
}

/// Default order and weights: kinds by descending success rate, weight =
/// rate / best rate, Others last at the smallest weight. Clone detection
/// uses the fixed order For, If, Try, Method, Throw, Return, Others.
inline PriorityTable default_priorities(TaskKind task) {
  auto rates = context_asr(task);
  double best = 0.0, lowest = 1e9;
  for (const auto& r : rates) {
    best = std::max(best, r.asr);
    lowest = std::min(lowest, r.asr);
  }
  using K = StatementKind;
  if (task == TaskKind::CloneDetection) {
    const K order[] = {K::For, K::If, K::Try, K::Method, K::Throw, K::Return};
    std::vector<KindRate> sorted;
    for (auto k : order) {
      sorted.push_back(*std::find_if(rates.begin(), rates.end(),
                                     [&](auto& r) { return r.kind == k; }));
    }
    rates = std::move(sorted);
  } else {
    std::stable_sort(rates.begin(), rates.end(),
                     [](auto& a, auto& b) { return a.asr > b.asr; });
  }
  PriorityTable t;
  for (const auto& r : rates) t.entries.emplace_back(r.kind, r.asr / best);
  t.entries.emplace_back(K::Others, lowest / best);
  return t;
}

/// Parses override lines "<task> <Kind> <weight>" ('#' starts a comment),
/// keeping the listed order for `task`. Kinds not listed are not searched.
inline PriorityTable parse_priorities(std::istream& in, TaskKind task) {
  PriorityTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string task_name, kind_name;
    double weight = 0.0;
    if (!(fields >> task_name)) continue;
    if (!(fields >> kind_name >> weight)) {
      throw std::invalid_argument("priority line " + std::to_string(lineno) +
                                  ": expected '<task> <Kind> <weight>'");
    }
    if (parse_task(task_name) != task) continue;
    auto kind = parse_statement_kind(kind_name);
    if (!kind) {
      throw std::invalid_argument("priority line " + std::to_string(lineno) +
                                  ": unknown kind '" + kind_name + "'");
    }
    t.entries.emplace_back(*kind, weight);
  }
  t.validate();
  return t;
}

inline PriorityTable load_priorities(const std::string& path, TaskKind task) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read priority file: " + path);
  return parse_priorities(in, task);
}

}  // namespace codeattack
