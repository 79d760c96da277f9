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
#include <random>

#include "codeattack/attacks/session.hpp"
#include "codeattack/candidates.hpp"

namespace codeattack {

struct MhmParams {
  int max_iter = 100;
  std::size_t k_cand = kDefaultCandidates;
  std::uint64_t seed = 0;
};

inline constexpr double kMarginFloor = 1e-6;

/// Metropolis-Hastings acceptance on the objective margin 1 - objective:
/// improvements are always taken, otherwise with probability
/// margin(proposed) / margin(current).
inline bool mhm_accept(double current, double proposed, double u) {
  if (proposed < current) return true;
  auto margin = [](double obj) { return std::clamp(1.0 - obj, kMarginFloor, 1.0); };
  return u < margin(proposed) / margin(current);
}

inline AttackOutcome attack_mhm(const AttackTarget& target, VictimHandle& victim,
                                const Vocabulary& vocab,
                                const MhmParams& params = {}) {
  AttackSession session("mhm", target, victim);
  RenameState state = initial_state(session);
  const auto& ids = session.original().identifiers();
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t iter = 0;
  for (; iter < static_cast<std::uint64_t>(std::max(params.max_iter, 0)) &&
         !ids.empty();
       ++iter) {
    const auto& id =
        ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    const auto list = random_candidates(state.code, state.map.current_name(id),
                                        vocab, params.k_cand, rng());
    auto step = score_candidates(session, state, id, list.candidates);
    if (!step.best) continue;
    if (step.success) {
      session.accept(step.event);
      const double obj = step.best->objective;
      return session.finish(true, step.best->code.source(),
                            std::move(step.best->map), obj, iter + 1);
    }
    if (mhm_accept(state.objective, step.best->objective, unit(rng))) {
      session.accept(step.event);
      state = std::move(*step.best);
    }
  }
  const double obj = state.objective;
  return session.finish(false, state.code.source(), std::move(state.map), obj,
                        iter);
}

}  // namespace codeattack
