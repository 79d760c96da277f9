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

// codeattack: run identifier-substitution and style-rewrite attacks against
// Java code models and report effectiveness and quality metrics.

#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codeattack/campaign.hpp"

namespace {

using codeattack::CampaignConfig;

// Flags that mirror config keys; only those given on the command line are
// applied on top of the config file.
const char* const kKeys[] = {
    "task",     "engine",        "backend",    "endpoint",   "max_in_flight",
    "timeout",  "dataset",       "limit",      "sample_seed", "seed",
    "max_iter", "k_cand",        "n",          "beam",       "depth",
    "population", "priority_file", "embeddings", "candidates", "embedder",
    "workers",  "output_dir"};

struct ConfigArgs {
  std::string file;
  std::map<std::string, std::string> flags;
  std::vector<std::string> sets;  // key=value
};

void add_config_options(CLI::App* cmd, ConfigArgs& args, bool with_file) {
  if (with_file) {
    cmd->add_option("-c,--config", args.file, "key=value config file");
  }
  for (const char* key : kKeys) {
    std::string flag = "--";
    for (const char* p = key; *p; ++p) flag += *p == '_' ? '-' : *p;
    cmd->add_option(flag, args.flags[key], std::string("override '") + key + "'");
  }
  cmd->add_option("--set", args.sets, "override any key: key=value");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::map<std::string, std::string> out;
  CLI::ConfigINI ini;
  for (const auto& item : ini.from_file(path)) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    std::string value;
    for (const auto& v : item.inputs) value += (value.empty() ? "" : ",") + v;
    out[item.name] = value;
  }
  return out;
}

CampaignConfig build_config(const std::string& file,
                            const std::map<std::string, std::string>& flags,
                            const std::vector<std::string>& sets) {
  CampaignConfig c;
  if (!file.empty()) {
    for (const auto& [k, v] : read_config_file(file)) codeattack::set_option(c, k, v);
  }
  for (const auto& [k, v] : flags) {
    if (!v.empty()) codeattack::set_option(c, k, v);
  }
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw codeattack::ConfigError("--set expects key=value, got '" + s + "'");
    }
    codeattack::set_option(c, s.substr(0, eq), s.substr(eq + 1));
  }
  codeattack::validate(c);
  return c;
}

void print_summary(const codeattack::CampaignResult& r) {
  std::printf("loaded %zu targets (%zu skipped), %zu attacked, %llu filter queries\n",
              r.loaded, r.skipped, r.report.rows.size(),
              static_cast<unsigned long long>(r.filter_queries));
  std::cout << codeattack::format_table(
      {{std::string(codeattack::to_string(r.config.engine)), r.report}}, true);
  if (r.report.successes > 0 && r.report.successes < r.report.attackable) {
    std::printf("AMQ over successful instances: %.2f\n", r.report.amq_success);
  }
}

int run_attack(const ConfigArgs& args) {
  const auto config = build_config(args.file, args.flags, args.sets);
  const auto result = codeattack::run_campaign(config);
  codeattack::write_reports(config.output_dir, result);
  print_summary(result);
  if (!result.error.empty()) {
    std::fprintf(stderr, "error: %s\npartial results in %s\n",
                 result.error.c_str(), config.output_dir.c_str());
    return 1;
  }
  return 0;
}

int run_compare(const std::string& file_a, const std::string& file_b,
                const ConfigArgs& shared) {
  const auto a = build_config(file_a, shared.flags, shared.sets);
  const auto b = build_config(file_b, shared.flags, shared.sets);
  const auto cmp = codeattack::compare_engines(a, b);
  codeattack::write_reports(std::filesystem::path(a.output_dir) / "a", cmp.a);
  codeattack::write_reports(std::filesystem::path(a.output_dir) / "b", cmp.b);
  const auto table = codeattack::format_comparison(cmp);
  codeattack::write_text(std::filesystem::path(a.output_dir) / "comparison.txt",
                         table);
  std::cout << table;
  for (const auto* side : {&cmp.a, &cmp.b}) {
    if (!side->error.empty()) {
      std::fprintf(stderr, "error: %s\n", side->error.c_str());
      return 1;
    }
  }
  return 0;
}

int run_metrics(const std::string& outcomes, const std::string& embedder,
                const std::string& endpoint) {
  std::unique_ptr<codeattack::EmbeddingProvider> provider;
  if (embedder == "remote") {
    auto client = std::make_shared<codeattack::RemoteClient>(
        codeattack::RemoteOptions{endpoint});
    provider = std::make_unique<codeattack::RemoteEmbedder>(client);
  } else {
    provider = std::make_unique<codeattack::TrigramEmbedder>();
  }
  const auto report = codeattack::recompute_report(outcomes, *provider);
  std::cout << codeattack::format_table({{"recomputed", report}}, true);
  for (const auto& row : report.rows) {
    std::cout << codeattack::row_json(row).dump() << '\n';
  }
  std::cout << nlohmann::json{{"aggregate", codeattack::aggregate_json(report)}}.dump()
            << '\n';
  return 0;
}

void print_defaults() {
  const CampaignConfig c;
  std::cout << "# codeattack campaign defaults (key = value)\n";
  for (const auto& [k, v] : codeattack::to_pairs(c)) {
    std::cout << k << " = " << v << '\n';
  }
  std::cout << "\n# per-task beam size (beam = 0) and statement priorities\n";
  for (auto task : {codeattack::TaskKind::CloneDetection,
                    codeattack::TaskKind::VulnerabilityDetection,
                    codeattack::TaskKind::CodeSummarization}) {
    std::cout << "# " << codeattack::to_string(task)
              << " beam=" << codeattack::default_beam_size(task) << '\n';
    for (const auto& [kind, w] : codeattack::default_priorities(task).entries) {
      std::cout << codeattack::to_string(task) << ' ' << codeattack::to_string(kind)
                << ' ' << codeattack::fixed(w, 4) << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-box adversarial attacks on Java code models"};
  app.require_subcommand(1);

  ConfigArgs attack_args;
  auto* attack = app.add_subcommand("attack", "run one attack campaign");
  add_config_options(attack, attack_args, true);

  ConfigArgs compare_args;
  std::string file_a, file_b;
  auto* compare = app.add_subcommand("compare", "run two campaigns on the same targets");
  compare->add_option("config_a", file_a, "first config file")->required();
  compare->add_option("config_b", file_b, "second config file")->required();
  add_config_options(compare, compare_args, false);

  std::string outcomes, embedder = "local", endpoint = "http://127.0.0.1:8080";
  auto* metrics = app.add_subcommand("metrics", "recompute metrics from outcomes.jsonl");
  metrics->add_option("outcomes", outcomes, "outcomes.jsonl from an attack run")
      ->required();
  metrics->add_option("--embedder", embedder, "local or remote")
      ->check(CLI::IsMember({"local", "remote"}));
  metrics->add_option("--endpoint", endpoint, "model service for remote embeddings");

  auto* defaults = app.add_subcommand("defaults", "print every default setting");

  CLI11_PARSE(app, argc, argv);
  try {
    if (attack->parsed()) return run_attack(attack_args);
    if (compare->parsed()) return run_compare(file_a, file_b, compare_args);
    if (metrics->parsed()) return run_metrics(outcomes, embedder, endpoint);
    if (defaults->parsed()) {
      print_defaults();
      return 0;
    }
  } catch (const codeattack::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
