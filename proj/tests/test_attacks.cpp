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

#include <sstream>

#include <gtest/gtest.h>

#include "engine_harness.hpp"

using namespace codeattack;

namespace {

const TaskKind kTasks[] = {TaskKind::CloneDetection, TaskKind::VulnerabilityDetection,
                           TaskKind::CodeSummarization};

/// Largest statement group, as a one-entry priority table.
PriorityTable single_group_table(const CodeSnippet& s) {
  const auto groups = statement_groups(s);
  StatementKind best = StatementKind::Method;
  for (auto k : kStatementKinds) {
    if (group_of(groups, k).size() > group_of(groups, best).size()) best = k;
  }
  return PriorityTable{{{best, 1.0}}};
}

}  // namespace

TEST(Attacks, QueryAccountingForEveryEngine) {
  for (auto task : kTasks) {
    const harness::Setup setup(task);
    VictimHandle victim(task, fixtures::surrogate());
    for (const auto& engine : harness::kEngines) {
      for (const auto& t : setup.targets) {
        const auto before = victim.query_count();
        const auto filter_before = victim.filter_query_count();
        const auto o = setup.run(engine, t, victim);
        EXPECT_EQ(o.queries, victim.query_count() - before) << engine << " " << t.id;
        EXPECT_EQ(o.trace.size(), o.queries) << engine << " " << t.id;
        EXPECT_EQ(o.engine, engine);
        // Baselines were recorded up front, so nothing else is charged.
        EXPECT_EQ(victim.filter_query_count(), filter_before);
        if (o.success) {
          const auto r = victim.score_unmetered(o.adversarial_code, t.paired_code);
          EXPECT_TRUE(is_success(task, t, r)) << engine << " " << t.id;
        }
      }
    }
  }
}

TEST(Attacks, IdentifierEnginesOnlyRenameIdentifiers) {
  for (auto task : kTasks) {
    const harness::Setup setup(task);
    VictimHandle victim(task, fixtures::surrogate());
    for (const auto& engine : harness::kEngines) {
      if (engine == "styletransfer") continue;
      for (const auto& t : setup.targets) {
        const auto o = setup.run(engine, t, victim);
        EXPECT_FALSE(o.whole_variant);
        // Replaying the recorded renames reproduces the adversarial code.
        auto code = parse(t.code);
        for (const auto& [orig, name] : o.replacements.entries()) {
          if (orig != name) code = rename(code, orig, name);
        }
        EXPECT_EQ(code.source(), o.adversarial_code) << engine << " " << t.id;
      }
    }
  }
}

TEST(Attacks, MhmWithZeroIterationsDoesNothing) {
  const harness::Setup setup(TaskKind::CloneDetection);
  VictimHandle victim(setup.task, fixtures::surrogate());
  const auto& t = setup.targets[0];
  const auto o = attack_mhm(t, victim, setup.vocab, {0, 30, 1});
  EXPECT_EQ(o.queries, 0u);
  EXPECT_FALSE(o.success);
  EXPECT_EQ(o.adversarial_code, t.code);
  EXPECT_TRUE(o.replacements.empty());
}

TEST(Attacks, StyleTransferStaysWithinBudget) {
  const harness::Setup setup(TaskKind::VulnerabilityDetection);
  VictimHandle victim(setup.task, fixtures::surrogate());
  for (std::size_t n : {1u, 5u, 50u}) {
    for (const auto& t : setup.targets) {
      const auto o = attack_styletransfer(t, victim, {n, 2, 3});
      EXPECT_LE(o.queries, n);
      EXPECT_TRUE(o.whole_variant);
      EXPECT_NO_THROW(parse(o.adversarial_code));
    }
  }
}

TEST(Attacks, PerturbStepQueriesAtMostK) {
  const harness::Setup setup(TaskKind::CodeSummarization);
  VictimHandle victim(setup.task, fixtures::surrogate());
  CosineProvider provider(setup.table);
  for (const auto& t : setup.targets) {
    AttackSession session("probe", t, victim);
    const auto state = initial_state(session);
    for (const auto& id : session.original().identifiers()) {
      for (std::size_t k : {1u, 5u, 30u}) {
        const auto before = victim.query_count();
        perturb_step(session, state, id, provider, k);
        EXPECT_LE(victim.query_count() - before, k);
      }
    }
  }
}

TEST(Beam, SizeOneIsGreedyHillClimbing) {
  for (auto task : kTasks) {
    const harness::Setup setup(task);
    VictimHandle a(task, fixtures::surrogate()), b(task, fixtures::surrogate());
    CosineProvider provider(setup.table);
    for (const auto& t : setup.targets) {
      const auto table = single_group_table(parse(t.code));
      const auto got = attack_beam(t, a, provider, {1, 30, table, true});
      const auto want = harness::greedy_reference(t, b, provider, table, 30);
      EXPECT_EQ(got.success, want.success) << t.id;
      EXPECT_EQ(got.adversarial_code, want.code) << t.id;
      std::vector<double> objectives;
      std::vector<std::string> visits;
      for (const auto& e : got.trace) {
        objectives.push_back(e.objective);
        visits.push_back(e.perturbation);
      }
      EXPECT_EQ(objectives, want.objectives) << t.id;
      EXPECT_EQ(visits, want.visits) << t.id;
    }
  }
}

TEST(Beam, WiderBeamIsNoWorseOnFixtures) {
  for (auto task : kTasks) {
    const harness::Setup setup(task);
    VictimHandle victim(task, fixtures::surrogate());
    CosineProvider provider(setup.table);
    for (const auto& t : setup.targets) {
      const auto one = attack_beam(t, victim, provider, {1, 30, std::nullopt, true});
      const auto two = attack_beam(t, victim, provider, {2, 30, std::nullopt, true});
      EXPECT_LE(two.objective, one.objective + 1e-12) << to_string(task) << " " << t.id;
      if (one.success) {
        EXPECT_TRUE(two.success) << to_string(task) << " " << t.id;
      }
    }
  }
}

TEST(Budget, MhmSuccessIsMonotoneInIterations) {
  for (auto task : kTasks) {
    const harness::Setup setup(task);
    VictimHandle victim(task, fixtures::surrogate());
    for (const auto& t : setup.targets) {
      bool prev = false;
      for (int budget : {1, 10, 100}) {
        const auto o = setup.run("mhm", t, victim, 3, budget);
        if (prev) {
          EXPECT_TRUE(o.success) << t.id << " at " << budget;
        }
        prev = o.success;
      }
    }
  }
}

TEST(Budget, StyleTransferSuccessIsMonotoneInVariants) {
  for (auto task : kTasks) {
    const harness::Setup setup(task);
    VictimHandle victim(task, fixtures::surrogate());
    for (const auto& t : setup.targets) {
      bool prev = false;
      for (int budget : {10, 100, 500}) {
        const auto o = setup.run("styletransfer", t, victim, 3, budget);
        if (prev) {
          EXPECT_TRUE(o.success) << t.id << " at " << budget;
        }
        prev = o.success;
      }
    }
  }
}

TEST(Priority, DefaultTables) {
  using K = StatementKind;
  const auto clone = default_priorities(TaskKind::CloneDetection);
  std::vector<K> order;
  for (const auto& [k, w] : clone.entries) order.push_back(k);
  EXPECT_EQ(order, (std::vector<K>{K::For, K::If, K::Try, K::Method, K::Throw, K::Return,
                                   K::Others}));
  EXPECT_NEAR(clone.entries[1].second, 23.37 / 26.05, 1e-12);
  EXPECT_NEAR(clone.entries[6].second, 11.26 / 26.05, 1e-12);

  order.clear();
  for (const auto& [k, w] : default_priorities(TaskKind::VulnerabilityDetection).entries) {
    order.push_back(k);
  }
  EXPECT_EQ(order, (std::vector<K>{K::If, K::Method, K::For, K::Try, K::Return, K::Throw,
                                   K::Others}));
  order.clear();
  for (const auto& [k, w] : default_priorities(TaskKind::CodeSummarization).entries) {
    order.push_back(k);
  }
  EXPECT_EQ(order, (std::vector<K>{K::Method, K::For, K::If, K::Try, K::Return, K::Throw,
                                   K::Others}));
  for (auto task : kTasks) EXPECT_NO_THROW(default_priorities(task).validate());

  EXPECT_EQ(default_beam_size(TaskKind::CloneDetection), 2u);
  EXPECT_EQ(default_beam_size(TaskKind::VulnerabilityDetection), 3u);
  EXPECT_EQ(default_beam_size(TaskKind::CodeSummarization), 5u);
}

TEST(Priority, ParseOverrides) {
  std::istringstream in(
      "# task kind weight\n"
      "clone If 1.0\n"
      "vulnerability For 1.0\n"
      "clone Return 0.5  # trailing comment\n");
  const auto t = parse_priorities(in, TaskKind::CloneDetection);
  ASSERT_EQ(t.entries.size(), 2u);
  EXPECT_EQ(t.entries[0], std::make_pair(StatementKind::If, 1.0));
  EXPECT_EQ(t.entries[1], std::make_pair(StatementKind::Return, 0.5));

  auto bad = [](const std::string& text) {
    std::istringstream s(text);
    return parse_priorities(s, TaskKind::CloneDetection);
  };
  EXPECT_THROW(bad("clone If\n"), std::invalid_argument);
  EXPECT_THROW(bad("clone Loop 1\n"), std::invalid_argument);
  EXPECT_THROW(bad("clone If 0.5\n"), std::invalid_argument);  // first weight must be 1
  EXPECT_THROW(bad("clone If 1\nclone If 0.5\n"), std::invalid_argument);
  EXPECT_THROW(bad("clone If 1\nclone For 1.5\n"), std::invalid_argument);
  EXPECT_THROW(bad("clone If 1\nclone For 0\n"), std::invalid_argument);
  EXPECT_THROW(bad("vulnerability If 1\n"), std::invalid_argument);  // empty for clone
}

TEST(Priority, SearchPhasesFollowTable) {
  const auto s = parse(
      "int f(int[] xs, int lim) { int total = 0; for (int x : xs) { if (x > lim) total += x; }"
      " return total; }");
  PriorityTable t{{{StatementKind::If, 1.0}, {StatementKind::For, 0.5},
                   {StatementKind::Throw, 1.0}}};
  const auto phases = search_phases(s, t);
  ASSERT_EQ(phases.size(), 2u);  // no throw statement
  EXPECT_EQ(phases[0].kind, StatementKind::If);
  EXPECT_EQ(phases[0].identifiers, (std::vector<std::string>{"lim", "total", "x"}));
  EXPECT_EQ(phases[0].max_iter, 3u);
  EXPECT_EQ(phases[1].kind, StatementKind::For);
  EXPECT_EQ(phases[1].max_iter,
            static_cast<std::size_t>(std::ceil(phases[1].identifiers.size() * 0.5)));
}

TEST(Mhm, AcceptanceRule) {
  EXPECT_TRUE(mhm_accept(0.9, 0.8, 0.999));  // improvement always taken
  EXPECT_TRUE(mhm_accept(0.5, 0.6, 0.79));   // margin ratio 0.4 / 0.5 = 0.8
  EXPECT_FALSE(mhm_accept(0.5, 0.6, 0.81));
  EXPECT_FALSE(mhm_accept(0.5, 1.0, 0.01));  // ratio floors near zero
  EXPECT_TRUE(mhm_accept(1.0, 1.0, 0.5));    // both at the floor: ratio 1
}
