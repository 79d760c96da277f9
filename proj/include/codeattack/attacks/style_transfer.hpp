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
#include <string>

#include "codeattack/attacks/session.hpp"
#include "codeattack/transforms.hpp"

namespace codeattack {

struct StyleParams {
  std::size_t n = 500;
  std::uint64_t seed = 0;
  int max_depth = 3;
};

/// Scores sampled style-rewrite variants in order, at most n queries.
inline AttackOutcome attack_styletransfer(const AttackTarget& target,
                                         VictimHandle& victim,
                                         const StyleParams& params = {}) {
  AttackSession session("styletransfer", target, victim);
  const auto variants = sample_variants(session.original(), params.n,
                                        params.seed, params.max_depth);
  std::string best_code = session.original().source();
  double best = session.baseline_objective();
  std::uint64_t iter = 0;
  for (const auto& v : variants) {
    ++iter;
    std::string label;
    for (auto k : v.applied) {
      if (!label.empty()) label += '+';
      label += to_string(k);
    }
    const auto s = session.score(v.code, label);
    if (s.success || s.objective < best) {
      session.accept(s.event);
      best = s.objective;
      best_code = v.code;
    }
    if (s.success) return session.finish(true, v.code, {}, s.objective, iter, true);
  }
  return session.finish(false, best_code, {}, best, iter, true);
}

}  // namespace codeattack
