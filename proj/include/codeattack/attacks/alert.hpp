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
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "codeattack/attacks/session.hpp"
#include "codeattack/candidates.hpp"

namespace codeattack {

struct AlertParams {
  std::size_t k_cand = kDefaultCandidates;
  std::size_t population = 30;
  std::uint64_t seed = 0;
  bool genetic = true;  // run the genetic phase when greedy fails
};

/// Greedy phase only: placeholder-importance order, each identifier
/// substituted by its best candidate when that lowers the objective.
/// Exposed separately because it is a reference point for other engines.
inline AttackOutcome attack_alert_greedy(const AttackTarget& target,
                                         VictimHandle& victim,
                                         CandidateProvider& provider,
                                         const AlertParams& params = {});

namespace detail {

struct Greedy {
  RenameState state;
  bool success = false;
  std::uint64_t iterations = 0;
};

inline Greedy alert_greedy(AttackSession& session, CandidateProvider& provider,
                           std::size_t k) {
  Greedy g{initial_state(session)};
  auto importance = rank_by_placeholder(session, g.state);
  g.iterations = 1;
  if (importance.success) {
    g.state = std::move(*importance.success);
    g.success = true;
    return g;
  }
  for (const auto& id : importance.order) {
    ++g.iterations;
    auto step = perturb_step(session, g.state, id, provider, k);
    if (!step.best) continue;
    if (step.success || step.best->objective < g.state.objective) {
      session.accept(step.event);
      g.state = std::move(*step.best);
    }
    if (step.success) {
      g.success = true;
      return g;
    }
  }
  return g;
}

}  // namespace detail

inline AttackOutcome attack_alert_greedy(const AttackTarget& target,
                                         VictimHandle& victim,
                                         CandidateProvider& provider,
                                         const AlertParams& params) {
  AttackSession session("alert-greedy", target, victim);
  auto g = detail::alert_greedy(session, provider, params.k_cand);
  const double obj = g.state.objective;
  return session.finish(g.success, g.state.code.source(),
                        std::move(g.state.map), obj, g.iterations);
}

/// Greedy substitution, then a genetic search over per-identifier candidate
/// choices seeded from the greedy result.
inline AttackOutcome attack_alert(const AttackTarget& target,
                                  VictimHandle& victim,
                                  CandidateProvider& provider,
                                  const AlertParams& params = {}) {
  AttackSession session("alert", target, victim);
  auto g = detail::alert_greedy(session, provider, params.k_cand);
  if (g.success || !params.genetic) {
    const double obj = g.state.objective;
    return session.finish(g.success, g.state.code.source(),
                          std::move(g.state.map), obj, g.iterations);
  }

  // Gene i: index into options[i], or -1 for the original name.
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> options;
  for (const auto& id : session.original().identifiers()) {
    auto list = provider.candidates(session.original(), id, params.k_cand);
    auto opts = list.candidates;
    if (auto r = g.state.map.replacement(id);
        r && *r != id && std::find(opts.begin(), opts.end(), *r) == opts.end()) {
      opts.push_back(*r);
    }
    if (opts.empty()) continue;
    ids.push_back(id);
    options.push_back(std::move(opts));
  }
  if (ids.empty()) {
    const double obj = g.state.objective;
    return session.finish(false, g.state.code.source(), std::move(g.state.map),
                          obj, g.iterations);
  }

  using Chromosome = std::vector<int>;
  struct Scored {
    Chromosome genes;
    std::optional<RenameState> state;  // empty: infeasible (name clash)
  };
  std::map<Chromosome, Scored> cache;
  std::optional<RenameState> winner;

  auto evaluate = [&](const Chromosome& genes) -> const Scored& {
    auto it = cache.find(genes);
    if (it != cache.end()) return it->second;
    Scored sc{genes, initial_state(session)};
    std::string label;
    for (std::size_t i = 0; i < ids.size() && sc.state; ++i) {
      if (genes[i] < 0) continue;
      const auto& name = options[i][static_cast<std::size_t>(genes[i])];
      sc.state = renamed(*sc.state, ids[i], name);
      label += (label.empty() ? "" : ",") + ids[i] + "->" + name;
    }
    if (sc.state) {
      if (label.empty()) {
        sc.state->objective = session.baseline_objective();
      } else {
        const auto s = session.score(sc.state->code.source(), label);
        sc.state->objective = s.objective;
        if (s.success && !winner) {
          session.accept(s.event);
          winner = sc.state;
        }
      }
    }
    return cache.emplace(genes, std::move(sc)).first->second;
  };
  auto fitness = [](const Scored& s) {
    return s.state ? s.state->objective : 2.0;  // infeasible ranks last
  };

  std::mt19937_64 rng(params.seed);
  auto mutate = [&](Chromosome c) {
    const auto i = std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(rng);
    c[i] = std::uniform_int_distribution<int>(
        -1, static_cast<int>(options[i].size()) - 1)(rng);
    return c;
  };

  Chromosome greedy(ids.size(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (auto r = g.state.map.replacement(ids[i]); r && *r != ids[i]) {
      const auto pos = std::find(options[i].begin(), options[i].end(), *r);
      greedy[i] = static_cast<int>(pos - options[i].begin());
    }
  }
  cache.emplace(greedy, Scored{greedy, g.state});

  std::vector<Chromosome> population{greedy};
  for (std::size_t tries = 0;
       population.size() < params.population && tries < 10 * params.population &&
       !winner;
       ++tries) {
    auto c = mutate(greedy);
    if (std::find(population.begin(), population.end(), c) != population.end()) {
      continue;
    }
    if (!evaluate(c).state) continue;
    population.push_back(std::move(c));
  }

  const std::size_t generations = std::max<std::size_t>(5 * ids.size(), 10);
  std::uint64_t iter = g.iterations;
  for (std::size_t gen = 0; gen < generations && !winner; ++gen) {
    ++iter;
    std::vector<Chromosome> pool = population;
    for (std::size_t c = 0; c < params.population && !winner; ++c) {
      std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
      const auto& a = population[pick(rng)];
      const auto& b = population[pick(rng)];
      const auto cut =
          std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng);
      Chromosome child(a.begin(), a.begin() + static_cast<long>(cut));
      child.insert(child.end(), b.begin() + static_cast<long>(cut), b.end());
      child = mutate(std::move(child));
      if (!evaluate(child).state) continue;
      pool.push_back(std::move(child));
    }
    std::stable_sort(pool.begin(), pool.end(), [&](auto& x, auto& y) {
      return fitness(cache.at(x)) < fitness(cache.at(y));
    });
    std::vector<Chromosome> next;
    for (auto& c : pool) {
      if (next.size() >= params.population) break;
      if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(c);
    }
    population = std::move(next);
  }

  if (winner) {
    const double obj = winner->objective;
    return session.finish(true, winner->code.source(), std::move(winner->map),
                          obj, iter);
  }
  auto best = *cache.at(population.front()).state;
  if (g.state.objective <= best.objective) best = g.state;
  const double obj = best.objective;
  return session.finish(false, best.code.source(), std::move(best.map), obj,
                        iter);
}

}  // namespace codeattack
