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

// Hand-decided attack-success cases: a label flip for classification, no
// shared 4-gram (BLEU-4 of exactly 0) for summaries.

#pragma once

#include <string>
#include <vector>

#include "codeattack/codeattack.hpp"

namespace success_table {

struct Case {
  std::string name;
  codeattack::AttackTarget target;
  codeattack::VictimResponse response;
  bool expected;
};

inline std::vector<Case> cases() {
  using codeattack::AttackTarget;
  using codeattack::Summary;
  using codeattack::TaskKind;
  using codeattack::VictimResponse;
  std::vector<Case> out;

  auto cls = [&](std::string name, TaskKind task, int truth, int label, double p1,
                 bool expected) {
    VictimResponse r;
    r.label = label;
    r.probs = {1.0 - p1, p1};
    out.push_back({std::move(name),
                   AttackTarget{"t", task, "", std::nullopt, truth, {}}, r,
                   expected});
  };
  for (auto task : {TaskKind::CloneDetection, TaskKind::VulnerabilityDetection}) {
    const std::string p(codeattack::to_string(task));
    cls(p + " 1->1", task, 1, 1, 0.9, false);
    cls(p + " 1->0", task, 1, 0, 0.1, true);
    cls(p + " 0->0", task, 0, 0, 0.2, false);
    cls(p + " 0->1", task, 0, 1, 0.8, true);
    cls(p + " 1->1 at 0.51", task, 1, 1, 0.51, false);
    cls(p + " 1->0 at 0.49", task, 1, 0, 0.49, true);
    // The label decides, not the probabilities.
    cls(p + " flip with stale probs", task, 1, 0, 0.9, true);
    cls(p + " kept with low prob", task, 1, 1, 0.1, false);
    cls(p + " 0 kept at 0.5", task, 0, 0, 0.5, false);
    cls(p + " 0->1 at 0.5001", task, 0, 1, 0.5001, true);
  }

  const Summary ref = {"returns", "the", "sum", "of", "all", "values"};
  auto gen = [&](std::string name, Summary reference, Summary summary,
                 bool expected) {
    VictimResponse r;
    r.summary = std::move(summary);
    out.push_back({std::move(name),
                   AttackTarget{"t", TaskKind::CodeSummarization, "", std::nullopt,
                                std::move(reference), {}},
                   r, expected});
  };
  gen("identical", ref, ref, false);
  gen("empty summary", ref, {}, true);
  gen("trailing 4-gram", ref, {"sum", "of", "all", "values"}, false);
  gen("leading 4-gram", ref, {"returns", "the", "sum", "of"}, false);
  gen("reversed", ref, {"values", "all", "of", "sum", "the", "returns"}, true);
  gen("three-word prefix", ref, {"returns", "the", "sum"}, true);
  gen("unrelated", ref, {"compute", "a", "running", "total"}, true);
  gen("middle word changed", ref, {"returns", "the", "total", "of", "all", "values"},
      true);
  gen("padded", ref, {"x", "returns", "the", "sum", "of", "all", "values", "y"},
      false);
  gen("short reference", {"get", "name"}, {"get", "name"}, true);
  return out;
}

}  // namespace success_table
