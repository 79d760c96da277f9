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

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "codeattack/syntax/snippet.hpp"

namespace codeattack {

enum class TaskKind : std::uint8_t {
  CloneDetection,
  VulnerabilityDetection,
  CodeSummarization,
};

inline std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::CloneDetection: return "clone";
    case TaskKind::VulnerabilityDetection: return "vulnerability";
    case TaskKind::CodeSummarization: return "summarization";
  }
  return "clone";
}

inline TaskKind parse_task(std::string_view s) {
  if (s == "clone" || s == "CloneDetection") return TaskKind::CloneDetection;
  if (s == "vulnerability" || s == "VulnerabilityDetection") {
    return TaskKind::VulnerabilityDetection;
  }
  if (s == "summarization" || s == "CodeSummarization") {
    return TaskKind::CodeSummarization;
  }
  throw std::invalid_argument("unknown task: " + std::string(s));
}

/// Classification tasks, as opposed to summary generation.
inline bool is_understanding(TaskKind t) {
  return t != TaskKind::CodeSummarization;
}

using Summary = std::vector<std::string>;

/// Whitespace tokenization used for summaries.
inline Summary split_words(std::string_view text) {
  Summary out;
  std::istringstream in{std::string(text)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

inline std::string join_words(const Summary& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

struct VictimResponse {
  int label = -1;  // understanding tasks
  std::array<double, 2> probs{0.0, 0.0};
  Summary summary;  // generation

  friend bool operator==(const VictimResponse&,
                         const VictimResponse&) = default;
};

struct AttackTarget {
  std::string id;
  TaskKind task = TaskKind::CloneDetection;
  std::string code;
  std::optional<std::string> paired_code;
  std::variant<int, Summary> truth;
  // Unperturbed victim response, recorded by filter_attackable so engines
  // need not spend an attack query on it.
  std::optional<VictimResponse> baseline;

  [[nodiscard]] int label() const { return std::get<int>(truth); }
  [[nodiscard]] const Summary& summary() const {
    return std::get<Summary>(truth);
  }
};

struct TraceEvent {
  std::string perturbation;  // e.g. "buf->data" or a transform list
  double objective = 0.0;
  bool accepted = false;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct AttackOutcome {
  std::string engine;
  bool success = false;
  std::string adversarial_code;
  ReplacementMap replacements;
  std::uint64_t queries = 0;
  double wall_seconds = 0.0;
  double victim_seconds = 0.0;
  std::uint64_t iterations = 0;
  double objective = 0.0;  // final objective of adversarial_code
  // True when the code was rewritten beyond identifier lexemes.
  bool whole_variant = false;
  std::vector<TraceEvent> trace;
};

}  // namespace codeattack
