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

// Shared fixture loading for the unit tests and the acceptance runner.

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "codeattack/codeattack.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(CODEATTACK_TEST_DATA) + "/" + name;
}

struct JavaSnippet {
  std::string id;
  std::string code;
};

inline std::vector<JavaSnippet> java_methods() {
  std::ifstream in(data_path("java_methods.jsonl"));
  if (!in) throw std::runtime_error("missing java_methods.jsonl");
  std::vector<JavaSnippet> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    out.push_back({j["id"].get<std::string>(), j["code"].get<std::string>()});
  }
  return out;
}

struct GroupingCase {
  std::string name;
  std::string code;
  std::map<codeattack::StatementKind, std::vector<std::string>> groups;
};

inline std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

inline std::vector<GroupingCase> grouping_cases() {
  std::ifstream in(data_path("grouping.txt"));
  if (!in) throw std::runtime_error("missing grouping.txt");
  std::vector<GroupingCase> cases;
  enum { None, Code, Groups } mode = None;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("=== ", 0) == 0) {
      cases.push_back({line.substr(4), "", {}});
      mode = Code;
    } else if (line == "--- groups") {
      mode = Groups;
    } else if (mode == Code) {
      cases.back().code += line + "\n";
    } else if (mode == Groups && !line.empty()) {
      const auto colon = line.find(':');
      auto kind = codeattack::parse_statement_kind(line.substr(0, colon));
      if (!kind) throw std::runtime_error("bad kind in grouping.txt: " + line);
      cases.back().groups[*kind] = split_names(line.substr(colon + 1));
    }
  }
  return cases;
}

inline std::shared_ptr<codeattack::VictimBackend> surrogate() {
  return std::make_shared<codeattack::LocalSurrogate>();
}

/// The 20-target fixture for `task` with truth set to the surrogate's own
/// output (label, or baseline summary as the reference) and baselines
/// recorded, so every target starts out attackable.
inline std::vector<codeattack::AttackTarget> surrogate_targets(
    codeattack::TaskKind task) {
  const std::string name =
      "surrogate_" + std::string(codeattack::to_string(task)) + ".jsonl";
  auto loaded = codeattack::load_dataset(data_path(name), task);
  codeattack::LocalSurrogate backend;
  for (auto& t : loaded.targets) {
    auto r = backend.predict(task, t.code, t.paired_code);
    if (codeattack::is_understanding(task)) {
      t.truth = r.label;
    } else {
      t.truth = r.summary;
    }
    t.baseline = r;
  }
  return loaded.targets;
}

/// Writes targets as a loadable jsonl dataset.
inline void write_dataset(const std::filesystem::path& path,
                          const std::vector<codeattack::AttackTarget>& targets) {
  std::ofstream out(path);
  for (const auto& t : targets) {
    nlohmann::json j{{"id", t.id}, {"code", t.code}};
    if (t.paired_code) j["code2"] = *t.paired_code;
    if (codeattack::is_understanding(t.task)) {
      j["label"] = t.label();
    } else {
      j["summary"] = codeattack::join_words(t.summary());
    }
    out << j.dump() << '\n';
  }
}

}  // namespace fixtures
