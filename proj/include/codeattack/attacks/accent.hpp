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
#include <string>
#include <utility>
#include <vector>

#include "codeattack/attacks/session.hpp"
#include "codeattack/candidates.hpp"

namespace codeattack {

struct AccentParams {
  std::size_t k_cand = kDefaultCandidates;
};

/// Ranks identifiers by the best single-substitution drop among their
/// nearest embedding neighbours, then commits the best substitution for each
/// identifier in that order. No identifier is replaced twice and there is no
/// cap on how many are replaced.
inline AttackOutcome attack_accent(const AttackTarget& target,
                                   VictimHandle& victim,
                                   const EmbeddingTable& table,
                                   const AccentParams& params = {}) {
  AttackSession session("accent", target, victim);
  RenameState state = initial_state(session);

  std::vector<std::pair<double, std::string>> ranked;
  for (const auto& id : session.original().identifiers()) {
    const auto list =
        cosine_candidates(table, state.code, id, params.k_cand);
    auto step = score_candidates(session, state, id, list.candidates);
    if (!step.best) continue;
    if (step.success) {
      session.accept(step.event);
      const double obj = step.best->objective;
      return session.finish(true, step.best->code.source(),
                            std::move(step.best->map), obj, 1);
    }
    ranked.emplace_back(step.best->objective, id);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::uint64_t iter = 1;
  for (const auto& [ignored, id] : ranked) {
    ++iter;
    const auto list = cosine_candidates(table, state.code,
                                        state.map.current_name(id),
                                        params.k_cand);
    auto step = score_candidates(session, state, id, list.candidates);
    if (!step.best) continue;
    session.accept(step.event);
    state = std::move(*step.best);
    if (step.success) {
      const double obj = state.objective;
      return session.finish(true, state.code.source(), std::move(state.map),
                            obj, iter);
    }
  }
  const double obj = state.objective;
  return session.finish(false, state.code.source(), std::move(state.map), obj,
                        iter);
}

}  // namespace codeattack
