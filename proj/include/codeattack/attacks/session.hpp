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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codeattack/candidates.hpp"
#include "codeattack/syntax/snippet.hpp"
#include "codeattack/types.hpp"
#include "codeattack/victim.hpp"

namespace codeattack {

struct Scored {
  VictimResponse response;
  double objective = 0.0;
  bool success = false;
  std::size_t event = 0;  // index into the session trace
};

/// Per-target bookkeeping shared by all engines: charges queries, records
/// one trace event per query, and assembles the outcome.
class AttackSession {
 public:
  AttackSession(std::string engine, const AttackTarget& target,
                VictimHandle& victim)
      : engine_(std::move(engine)),
        target_(target),
        victim_(victim),
        original_(parse(target.code)),
        start_queries_(victim.query_count()),
        start_victim_time_(victim.time_spent()),
        start_(std::chrono::steady_clock::now()) {
    baseline_ = target.baseline
                    ? *target.baseline
                    : victim.score_unmetered(target.code, target.paired_code);
    baseline_objective_ = objective(target_, baseline_, baseline_);
  }

  [[nodiscard]] const AttackTarget& target() const { return target_; }
  [[nodiscard]] const CodeSnippet& original() const { return original_; }
  [[nodiscard]] const VictimResponse& baseline() const { return baseline_; }
  [[nodiscard]] double baseline_objective() const { return baseline_objective_; }
  [[nodiscard]] const std::vector<TraceEvent>& trace() const { return trace_; }

  /// One victim query on `code`.
  Scored score(const std::string& code, std::string perturbation) {
    Scored s;
    s.response = victim_.score(code, target_.paired_code);
    s.objective = objective(target_, baseline_, s.response);
    s.success = is_success(target_.task, target_, s.response);
    s.event = trace_.size();
    trace_.push_back({std::move(perturbation), s.objective, false});
    return s;
  }

  void accept(std::size_t event) { trace_.at(event).accepted = true; }

  [[nodiscard]] std::uint64_t queries() const {
    return victim_.query_count() - start_queries_;
  }

  AttackOutcome finish(bool success, std::string code, ReplacementMap map,
                       double final_objective, std::uint64_t iterations,
                       bool whole_variant = false) {
    AttackOutcome o;
    o.engine = engine_;
    o.success = success;
    o.adversarial_code = std::move(code);
    o.replacements = std::move(map);
    o.queries = queries();
    o.iterations = iterations;
    o.objective = final_objective;
    o.whole_variant = whole_variant;
    o.trace = std::move(trace_);
    o.victim_seconds = victim_.time_spent() - start_victim_time_;
    o.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start_)
                         .count();
    return o;
  }

 private:
  std::string engine_;
  const AttackTarget& target_;
  VictimHandle& victim_;
  CodeSnippet original_;
  VictimResponse baseline_;
  double baseline_objective_ = 0.0;
  std::uint64_t start_queries_;
  double start_victim_time_;
  std::chrono::steady_clock::time_point start_;
  std::vector<TraceEvent> trace_;
};

/// Identifier-substitution search state: current code, the renames applied
/// so far (keyed by original name), and its objective.
struct RenameState {
  CodeSnippet code;
  ReplacementMap map;
  double objective = 0.0;
};

inline RenameState initial_state(const AttackSession& session) {
  return {session.original(), {}, session.baseline_objective()};
}

/// `state` with `original` (under its current name) renamed to `name`, or
/// nullopt if the rename is rejected. The objective is left unchanged.
inline std::optional<RenameState> renamed(const RenameState& state,
                                          const std::string& original,
                                          const std::string& name) {
  try {
    RenameState next{rename(state.code, state.map.current_name(original), name),
                     state.map, state.objective};
    next.map.record(original, name);
    return next;
  } catch (const RenameError&) {
    return std::nullopt;
  }
}

inline std::string describe(const RenameState& state,
                            const std::string& original,
                            const std::string& name) {
  const auto current = state.map.current_name(original);
  if (current == original) return original + "->" + name;
  return original + ":" + current + "->" + name;
}

struct StepResult {
  std::optional<RenameState> best;  // empty when nothing was scored
  bool success = false;
  std::string candidate;
  std::size_t event = 0;
};

/// Scores each candidate for `original` (one query each) and returns the
/// lowest-objective rename; stops at the first candidate that succeeds.
inline StepResult score_candidates(AttackSession& session,
                                   const RenameState& state,
                                   const std::string& original,
                                   const std::vector<std::string>& candidates) {
  StepResult r;
  for (const auto& name : candidates) {
    auto next = renamed(state, original, name);
    if (!next) continue;
    const auto s = session.score(next->code.source(),
                                 describe(state, original, name));
    next->objective = s.objective;
    if (!r.best || s.objective < r.best->objective || s.success) {
      r.best = std::move(*next);
      r.candidate = name;
      r.event = s.event;
    }
    if (s.success) {
      r.success = true;
      break;
    }
  }
  return r;
}

/// One Perturb step: up to k candidates from `provider` for the current name
/// of `original`, each scored once. Empty candidate list: no queries.
inline StepResult perturb_step(AttackSession& session, const RenameState& state,
                               const std::string& original,
                               CandidateProvider& provider,
                               std::size_t k = kDefaultCandidates) {
  const auto list =
      provider.candidates(state.code, state.map.current_name(original), k);
  return score_candidates(session, state, original, list.candidates);
}

/// Identifier importance by the objective drop when renamed to a placeholder
/// ("UNK", with digits appended on collision). Sorted by descending drop;
/// ties keep first-occurrence order. Sets `success` if a placeholder rename
/// already succeeds.
struct Importance {
  std::vector<std::string> order;
  std::optional<RenameState> success;
};

inline Importance rank_by_placeholder(AttackSession& session,
                                      const RenameState& state) {
  Importance out;
  std::vector<std::pair<double, std::string>> drops;
  for (const auto& id : session.original().identifiers()) {
    std::string unk = "UNK";
    for (int i = 1; rename_violation(state.code, state.map.current_name(id), unk);
         ++i) {
      unk = "UNK" + std::to_string(i);
    }
    auto next = renamed(state, id, unk);
    if (!next) continue;
    const auto s = session.score(next->code.source(), describe(state, id, unk));
    next->objective = s.objective;
    if (s.success) {
      session.accept(s.event);
      out.success = std::move(next);
      return out;
    }
    drops.emplace_back(state.objective - s.objective, id);
  }
  std::stable_sort(drops.begin(), drops.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto& d : drops) out.order.push_back(std::move(d.second));
  return out;
}

}  // namespace codeattack
