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
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "codeattack/syntax/snippet.hpp"
#include "codeattack/types.hpp"
#include "codeattack/victim.hpp"

namespace codeattack {

/// The dataset file could not be read at all.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadResult {
  std::vector<AttackTarget> targets;
  std::size_t skipped = 0;
  std::size_t lines = 0;
  std::vector<std::string> diagnostics;
};

/// Validates one JSON record; throws std::invalid_argument naming the
/// problem.
inline AttackTarget parse_record(const std::string& line, TaskKind task) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("record is not an object");
  AttackTarget t;
  t.task = task;
  if (!j.contains("id")) throw std::invalid_argument("missing 'id'");
  if (j["id"].is_string()) {
    t.id = j["id"].get<std::string>();
  } else if (j["id"].is_number_integer()) {
    t.id = std::to_string(j["id"].get<long long>());
  } else {
    throw std::invalid_argument("'id' must be a string or integer");
  }
  auto code_field = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw std::invalid_argument(std::string("missing string '") + key + "'");
    }
    std::string code = j[key].get<std::string>();
    try {
      (void)parse(code);
    } catch (const syntax::SyntaxError& e) {
      throw std::invalid_argument(std::string("'") + key +
                                  "' does not parse: " + e.what());
    }
    return code;
  };
  t.code = code_field("code");
  if (task == TaskKind::CloneDetection) {
    t.paired_code = code_field("code2");
  } else if (j.contains("code2")) {
    throw std::invalid_argument("'code2' only allowed for clone pairs");
  }
  const bool has_label = j.contains("label");
  const bool has_summary = j.contains("summary");
  if (has_label == has_summary) {
    throw std::invalid_argument("exactly one of 'label' or 'summary' required");
  }
  if (is_understanding(task)) {
    if (!has_label || !j["label"].is_number_integer()) {
      throw std::invalid_argument("understanding tasks need an integer 'label'");
    }
    const int label = j["label"].get<int>();
    if (label != 0 && label != 1) {
      throw std::invalid_argument("'label' must be 0 or 1");
    }
    t.truth = label;
  } else {
    if (!has_summary || !j["summary"].is_string()) {
      throw std::invalid_argument("summarization needs a string 'summary'");
    }
    auto words = split_words(j["summary"].get<std::string>());
    if (words.empty()) throw std::invalid_argument("'summary' is empty");
    t.truth = std::move(words);
  }
  return t;
}

/// Reads line-delimited records in file order. Invalid records are skipped
/// with a diagnostic; returned + skipped always equals the line count.
inline LoadResult load_dataset(const std::string& path, TaskKind task) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot read dataset: " + path);
  LoadResult r;
  std::string line;
  while (std::getline(in, line)) {
    ++r.lines;
    std::string where = "line " + std::to_string(r.lines);
    try {
      const auto j = nlohmann::json::parse(line, nullptr, false);
      if (!j.is_discarded() && j.is_object() && j.contains("id")) {
        where += " (id " + j["id"].dump() + ")";
      }
      r.targets.push_back(parse_record(line, task));
    } catch (const std::invalid_argument& e) {
      ++r.skipped;
      r.diagnostics.push_back(where + ": " + e.what());
    }
  }
  if (in.bad()) throw LoadError("read error: " + path);
  return r;
}

inline constexpr std::uint64_t kDefaultSampleSeed = 42;

/// A seeded subset of `count` targets kept in their original order.
inline std::vector<AttackTarget> sample_targets(
    const std::vector<AttackTarget>& targets, std::size_t count,
    std::uint64_t seed = kDefaultSampleSeed) {
  if (count >= targets.size()) return targets;
  std::vector<std::size_t> idx(targets.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  std::vector<AttackTarget> out;
  for (auto i : idx) out.push_back(targets[i]);
  return out;
}

using Vocabulary = std::vector<std::string>;

/// Sorted unique renameable identifiers across all loaded snippets.
inline Vocabulary harvest_vocabulary(const std::vector<AttackTarget>& targets) {
  std::set<std::string> names;
  for (const auto& t : targets) {
    const auto code = parse(t.code);
    names.insert(code.identifiers().begin(), code.identifiers().end());
    if (t.paired_code) {
      const auto paired = parse(*t.paired_code);
      names.insert(paired.identifiers().begin(), paired.identifiers().end());
    }
  }
  return {names.begin(), names.end()};
}

/// Keeps targets with at least one renameable identifier that the victim
/// gets right (classification only), recording each baseline response.
/// Queries made here do not count toward attack budgets.
inline std::vector<AttackTarget> filter_attackable(
    const std::vector<AttackTarget>& targets, VictimHandle& victim) {
  std::vector<AttackTarget> out;
  for (const auto& t : targets) {
    if (parse(t.code).identifiers().empty()) continue;
    auto base = victim.score_unmetered(t.code, t.paired_code);
    if (is_understanding(t.task) && base.label != t.label()) continue;
    AttackTarget kept = t;
    kept.baseline = std::move(base);
    out.push_back(std::move(kept));
  }
  return out;
}

}  // namespace codeattack
