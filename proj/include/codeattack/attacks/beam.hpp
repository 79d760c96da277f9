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
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codeattack/attacks/priority.hpp"
#include "codeattack/attacks/session.hpp"
#include "codeattack/candidates.hpp"

namespace codeattack {

inline std::size_t default_beam_size(TaskKind task) {
  switch (task) {
    case TaskKind::CloneDetection: return 2;
    case TaskKind::VulnerabilityDetection: return 3;
    case TaskKind::CodeSummarization: return 5;
  }
  return 2;
}

struct BeamParams {
  std::size_t beam = 0;  // 0: task default
  std::size_t k_cand = kDefaultCandidates;
  std::optional<PriorityTable> priorities;  // empty: task default
  bool final_pass = true;
};

struct SearchPhase {
  StatementKind kind;
  double weight;
  std::vector<std::string> identifiers;
  std::size_t max_iter;  // ceil(|identifiers| * weight)
};

/// Non-empty statement groups of `snippet` in priority order.
inline std::vector<SearchPhase> search_phases(const CodeSnippet& snippet,
                                              const PriorityTable& table) {
  const auto groups = statement_groups(snippet);
  std::vector<SearchPhase> phases;
  for (const auto& [kind, weight] : table.entries) {
    const auto& ids = group_of(groups, kind);
    if (ids.empty()) continue;
    const auto iters = static_cast<std::size_t>(
        std::ceil(static_cast<double>(ids.size()) * weight - 1e-12));
    phases.push_back({kind, weight, ids, std::max<std::size_t>(iters, 1)});
  }
  return phases;
}

namespace detail {

struct BeamEntry {
  RenameState state;
  std::vector<std::string> pending;
  bool expanded = false;
};

struct SearchResult {
  std::vector<BeamEntry> population;
  std::optional<RenameState> success;
  std::uint64_t iterations = 0;
};

inline SearchResult beam_search(AttackSession& session,
                                std::vector<BeamEntry> population,
                                std::size_t max_iter, std::size_t beam,
                                CandidateProvider& provider, std::size_t k) {
  SearchResult r;
  for (std::size_t it = 0; it < max_iter; ++it) {
    ++r.iterations;
    std::vector<BeamEntry> fresh;
    for (auto& entry : population) {
      // A deterministic victim would regenerate the same discarded children.
      if (entry.expanded) continue;
      entry.expanded = true;
      for (const auto& id : entry.pending) {
        auto step = perturb_step(session, entry.state, id, provider, k);
        if (!step.best) continue;
        if (step.success) {
          session.accept(step.event);
          r.success = std::move(step.best);
          r.population = std::move(population);
          return r;
        }
        session.accept(step.event);
        BeamEntry child{std::move(*step.best), entry.pending, false};
        child.pending.erase(
            std::find(child.pending.begin(), child.pending.end(), id));
        fresh.push_back(std::move(child));
      }
    }
    if (fresh.empty()) break;

    std::vector<BeamEntry> pool = population;
    for (auto& f : fresh) pool.push_back(std::move(f));
    std::stable_sort(pool.begin(), pool.end(), [](auto& a, auto& b) {
      return a.state.objective < b.state.objective;
    });
    std::vector<BeamEntry> next;
    std::set<std::string> codes;
    for (auto& e : pool) {
      if (next.size() >= beam) break;
      if (!codes.insert(e.state.code.source()).second) continue;
      next.push_back(std::move(e));
    }
    const bool unchanged =
        next.size() == population.size() &&
        std::equal(next.begin(), next.end(), population.begin(),
                   [](auto& a, auto& b) {
                     return a.state.code.source() == b.state.code.source();
                   });
    population = std::move(next);
    if (unchanged) break;
  }
  r.population = std::move(population);
  return r;
}

}  // namespace detail

/// Statement-prioritized beam search over identifier substitutions: one
/// beam search per statement group in priority order, then a final search
/// over every identifier replaced so far, which may be re-substituted.
inline AttackOutcome attack_beam(const AttackTarget& target,
                                 VictimHandle& victim,
                                 CandidateProvider& provider,
                                 const BeamParams& params = {}) {
  AttackSession session("beam", target, victim);
  const auto table = params.priorities.value_or(default_priorities(target.task));
  table.validate();
  const std::size_t beam =
      params.beam > 0 ? params.beam : default_beam_size(target.task);

  std::vector<detail::BeamEntry> population{{initial_state(session), {}, false}};
  std::vector<std::string> replaced;  // rv
  std::uint64_t iterations = 0;
  auto done = [&](RenameState s) {
    const double obj = s.objective;
    return session.finish(true, s.code.source(), std::move(s.map), obj,
                          iterations);
  };

  for (const auto& phase : search_phases(session.original(), table)) {
    for (auto& e : population) {
      e.pending.clear();
      for (const auto& id : phase.identifiers) {
        if (!e.state.map.replacement(id)) e.pending.push_back(id);
      }
      e.expanded = false;
    }
    auto r = detail::beam_search(session, std::move(population),
                                 phase.max_iter, beam, provider, params.k_cand);
    iterations += r.iterations;
    if (r.success) return done(std::move(*r.success));
    population = std::move(r.population);
    for (const auto& e : population) {
      for (const auto& [orig, name] : e.state.map.entries()) {
        if (std::find(replaced.begin(), replaced.end(), orig) == replaced.end()) {
          replaced.push_back(orig);
        }
      }
    }
  }

  if (params.final_pass && !replaced.empty()) {
    for (auto& e : population) {
      e.pending = replaced;
      e.expanded = false;
    }
    auto r = detail::beam_search(session, std::move(population),
                                 replaced.size(), beam, provider,
                                 params.k_cand);
    iterations += r.iterations;
    if (r.success) return done(std::move(*r.success));
    population = std::move(r.population);
  }

  auto best = std::min_element(population.begin(), population.end(),
                               [](auto& a, auto& b) {
                                 return a.state.objective < b.state.objective;
                               });
  RenameState s = best->state;
  const double obj = s.objective;
  return session.finish(false, s.code.source(), std::move(s.map), obj,
                        iterations);
}

}  // namespace codeattack
