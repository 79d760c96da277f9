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

#include <cstdint>
#include <random>

#include "codeattack/attacks/session.hpp"
#include "codeattack/candidates.hpp"

namespace codeattack {

struct WirParams {
  std::size_t k_cand = kDefaultCandidates;
  std::uint64_t seed = 0;
};

/// Placeholder-importance ranking followed by one pass of random
/// substitution; a substitution is kept only if it lowers the objective.
inline AttackOutcome attack_wir_random(const AttackTarget& target,
                                       VictimHandle& victim,
                                       const Vocabulary& vocab,
                                       const WirParams& params = {}) {
  AttackSession session("wir-random", target, victim);
  RenameState state = initial_state(session);
  auto importance = rank_by_placeholder(session, state);
  if (importance.success) {
    const double obj = importance.success->objective;
    return session.finish(true, importance.success->code.source(),
                          std::move(importance.success->map), obj, 1);
  }
  std::mt19937_64 rng(params.seed);
  std::uint64_t iter = 1;
  for (const auto& id : importance.order) {
    ++iter;
    const auto list = random_candidates(state.code, state.map.current_name(id),
                                        vocab, params.k_cand, rng());
    auto step = score_candidates(session, state, id, list.candidates);
    if (!step.best) continue;
    if (step.success || step.best->objective < state.objective) {
      session.accept(step.event);
      state = std::move(*step.best);
    }
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
