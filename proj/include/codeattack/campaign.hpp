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

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "codeattack/attacks/accent.hpp"
#include "codeattack/attacks/alert.hpp"
#include "codeattack/attacks/beam.hpp"
#include "codeattack/attacks/mhm.hpp"
#include "codeattack/attacks/priority.hpp"
#include "codeattack/attacks/style_transfer.hpp"
#include "codeattack/attacks/wir_random.hpp"
#include "codeattack/candidates.hpp"
#include "codeattack/corpus.hpp"
#include "codeattack/metrics.hpp"
#include "codeattack/victim.hpp"

namespace codeattack {

enum class Engine : std::uint8_t { Mhm, Accent, WirRandom, Alert, StyleTransfer, Beam };

inline std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Mhm: return "mhm";
    case Engine::Accent: return "accent";
    case Engine::WirRandom: return "wir-random";
    case Engine::Alert: return "alert";
    case Engine::StyleTransfer: return "styletransfer";
    case Engine::Beam: return "beam";
  }
  return "mhm";
}

inline Engine parse_engine(std::string_view s) {
  for (auto e : {Engine::Mhm, Engine::Accent, Engine::WirRandom, Engine::Alert,
                 Engine::StyleTransfer, Engine::Beam}) {
    if (to_string(e) == s) return e;
  }
  if (s == "wir" || s == "wir_random") return Engine::WirRandom;
  if (s == "style" || s == "style_transfer") return Engine::StyleTransfer;
  throw std::invalid_argument("unknown engine: " + std::string(s));
}

/// Thrown for configuration problems; the message names the key.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CampaignConfig {
  TaskKind task = TaskKind::CloneDetection;
  Engine engine = Engine::Beam;
  std::string backend = "local";  // local | remote
  std::string endpoint = "http://127.0.0.1:8080";
  std::size_t max_in_flight = 4;
  double timeout = 30.0;
  std::string dataset;
  std::size_t limit = 0;  // 0: all targets
  std::uint64_t sample_seed = kDefaultSampleSeed;
  std::uint64_t seed = 0;
  int max_iter = 100;
  std::size_t k_cand = kDefaultCandidates;
  std::size_t n = 500;
  std::size_t beam = 0;  // 0: task default
  int depth = 3;
  std::size_t population = 30;
  std::string priority_file;
  std::string embeddings;      // empty: trigram table over the corpus
  std::string candidates;      // cosine | contextaware | random; empty: auto
  std::string embedder;        // local | remote; empty: follows backend
  std::size_t workers = 1;
  std::string output_dir = "out";
};

inline std::map<std::string, std::string> to_pairs(const CampaignConfig& c) {
  auto num = [](auto v) { return std::to_string(v); };
  std::ostringstream timeout;
  timeout << c.timeout;
  return {
      {"task", std::string(to_string(c.task))},
      {"engine", std::string(to_string(c.engine))},
      {"backend", c.backend},
      {"endpoint", c.endpoint},
      {"max_in_flight", num(c.max_in_flight)},
      {"timeout", timeout.str()},
      {"dataset", c.dataset},
      {"limit", num(c.limit)},
      {"sample_seed", num(c.sample_seed)},
      {"seed", num(c.seed)},
      {"max_iter", num(c.max_iter)},
      {"k_cand", num(c.k_cand)},
      {"n", num(c.n)},
      {"beam", num(c.beam)},
      {"depth", num(c.depth)},
      {"population", num(c.population)},
      {"priority_file", c.priority_file},
      {"embeddings", c.embeddings},
      {"candidates", c.candidates},
      {"embedder", c.embedder},
      {"workers", num(c.workers)},
      {"output_dir", c.output_dir},
  };
}

/// Applies one key=value setting.
inline void set_option(CampaignConfig& c, const std::string& key,
                       const std::string& value) {
  auto as_u64 = [&]() -> std::uint64_t {
    try {
      std::size_t used = 0;
      if (!value.empty() && value[0] == '-') throw std::invalid_argument("");
      const auto v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(key + ": expected a non-negative integer, got '" +
                        value + "'");
    }
  };
  try {
    if (key == "task") c.task = parse_task(value);
    else if (key == "engine") c.engine = parse_engine(value);
    else if (key == "backend") c.backend = value;
    else if (key == "endpoint") c.endpoint = value;
    else if (key == "max_in_flight") c.max_in_flight = as_u64();
    else if (key == "timeout") c.timeout = std::stod(value);
    else if (key == "dataset") c.dataset = value;
    else if (key == "limit") c.limit = as_u64();
    else if (key == "sample_seed") c.sample_seed = as_u64();
    else if (key == "seed") c.seed = as_u64();
    else if (key == "max_iter") c.max_iter = static_cast<int>(as_u64());
    else if (key == "k_cand") c.k_cand = as_u64();
    else if (key == "n") c.n = as_u64();
    else if (key == "beam") c.beam = as_u64();
    else if (key == "depth") c.depth = static_cast<int>(as_u64());
    else if (key == "population") c.population = as_u64();
    else if (key == "priority_file") c.priority_file = value;
    else if (key == "embeddings") c.embeddings = value;
    else if (key == "candidates") c.candidates = value;
    else if (key == "embedder") c.embedder = value;
    else if (key == "workers") c.workers = as_u64();
    else if (key == "output_dir") c.output_dir = value;
    else throw ConfigError("unknown config key '" + key + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

inline void validate(const CampaignConfig& c) {
  if (c.dataset.empty()) throw ConfigError("dataset: required");
  if (c.backend != "local" && c.backend != "remote") {
    throw ConfigError("backend: expected 'local' or 'remote'");
  }
  if (c.k_cand < 1 || c.k_cand > kDefaultCandidates) {
    throw ConfigError("k_cand: must be in [1, 30]");
  }
  if (c.n < 1) throw ConfigError("n: must be >= 1");
  if (c.max_iter < 0) throw ConfigError("max_iter: must be >= 0");
  if (c.depth < 1 || c.depth > 3) throw ConfigError("depth: must be in [1, 3]");
  if (c.population < 2) throw ConfigError("population: must be >= 2");
  if (c.workers < 1) throw ConfigError("workers: must be >= 1");
  if (c.max_in_flight < 1) throw ConfigError("max_in_flight: must be >= 1");
  if (!(c.timeout > 0)) throw ConfigError("timeout: must be positive");
  if (!c.candidates.empty() && c.candidates != "cosine" &&
      c.candidates != "contextaware" && c.candidates != "random") {
    throw ConfigError("candidates: expected cosine, contextaware or random");
  }
  if (!c.embedder.empty() && c.embedder != "local" && c.embedder != "remote") {
    throw ConfigError("embedder: expected 'local' or 'remote'");
  }
  if (c.output_dir.empty()) throw ConfigError("output_dir: required");
}

/// Everything one campaign run shares across targets.
struct CampaignContext {
  CampaignConfig config;
  std::shared_ptr<RemoteClient> remote;
  std::shared_ptr<VictimBackend> backend;
  std::shared_ptr<EmbeddingProvider> embedder;
  Vocabulary vocab;
  std::shared_ptr<const EmbeddingTable> table;
  std::optional<PriorityTable> priorities;
};

inline CampaignContext make_context(const CampaignConfig& config,
                                    const std::vector<AttackTarget>& loaded) {
  CampaignContext cx;
  cx.config = config;
  if (config.backend == "remote" ||
      config.candidates == "contextaware" || config.embedder == "remote") {
    cx.remote = std::make_shared<RemoteClient>(RemoteOptions{
        config.endpoint, config.max_in_flight, config.timeout});
  }
  if (config.backend == "remote") {
    cx.backend = std::make_shared<RemoteVictim>(cx.remote);
  } else {
    cx.backend = std::make_shared<LocalSurrogate>();
  }
  const auto embedder = config.embedder.empty() ? config.backend : config.embedder;
  if (embedder == "remote") {
    cx.embedder = std::make_shared<RemoteEmbedder>(cx.remote);
  } else {
    cx.embedder = std::make_shared<TrigramEmbedder>();
  }
  cx.vocab = harvest_vocabulary(loaded);
  cx.table = std::make_shared<const EmbeddingTable>(
      config.embeddings.empty() ? EmbeddingTable::trigram(cx.vocab)
                                : load_embeddings(config.embeddings));
  if (!config.priority_file.empty()) {
    cx.priorities = load_priorities(config.priority_file, config.task);
  }
  return cx;
}

inline std::uint64_t target_seed(std::uint64_t seed, std::size_t index) {
  return detail::splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
}

/// Runs the configured engine on one target with its own counter scope.
inline AttackOutcome run_engine(const CampaignContext& cx,
                                const AttackTarget& target, VictimHandle& victim,
                                std::uint64_t seed) {
  const auto& c = cx.config;
  std::string strategy = c.candidates;
  if (strategy.empty()) strategy = c.backend == "remote" ? "contextaware" : "cosine";
  std::unique_ptr<CandidateProvider> provider;
  if (strategy == "random") {
    provider = std::make_unique<RandomProvider>(cx.vocab, seed);
  } else if (strategy == "contextaware") {
    provider = std::make_unique<ContextAwareProvider>(
        cx.remote, std::make_shared<CosineProvider>(cx.table));
  } else {
    provider = std::make_unique<CosineProvider>(cx.table);
  }
  switch (c.engine) {
    case Engine::Mhm:
      return attack_mhm(target, victim, cx.vocab, {c.max_iter, c.k_cand, seed});
    case Engine::Accent:
      return attack_accent(target, victim, *cx.table, {c.k_cand});
    case Engine::WirRandom:
      return attack_wir_random(target, victim, cx.vocab, {c.k_cand, seed});
    case Engine::Alert:
      return attack_alert(target, victim, *provider,
                          {c.k_cand, c.population, seed, true});
    case Engine::StyleTransfer:
      return attack_styletransfer(target, victim, {c.n, seed, c.depth});
    case Engine::Beam:
      return attack_beam(target, victim, *provider,
                         {c.beam, c.k_cand, cx.priorities, true});
  }
  throw std::logic_error("unhandled engine");
}

inline InstanceRow make_row(const AttackTarget& target,
                            const AttackOutcome& outcome,
                            EmbeddingProvider& embedder) {
  InstanceRow row;
  row.id = target.id;
  row.success = outcome.success;
  row.queries = outcome.queries;
  row.wall_seconds = outcome.wall_seconds;
  row.victim_seconds = outcome.victim_seconds;
  row.changes = icr_tcr(parse(target.code), outcome);
  row.acs = acs(embedder, target.code, outcome.adversarial_code);
  row.aed = static_cast<double>(aed(target.code, outcome.adversarial_code));
  row.objective = outcome.objective;
  return row;
}

struct CampaignResult {
  CampaignConfig config;
  std::vector<AttackTarget> targets;  // attackable, in file order
  std::vector<AttackOutcome> outcomes;
  MetricsReport report;
  std::size_t loaded = 0;
  std::size_t skipped = 0;
  std::uint64_t filter_queries = 0;
  std::uint64_t victim_queries = 0;  // attack queries, all targets
  std::string error;                 // non-empty: aborted, partial results
};

/// Runs the engine over already-filtered targets on a worker pool. Outcomes
/// keep target order; a worker failure stops the pool and is reported in
/// `error` with the outcomes finished so far.
inline void attack_targets(const CampaignContext& cx, CampaignResult& result,
                           VictimHandle& prototype) {
  const auto& targets = result.targets;
  std::vector<std::optional<AttackOutcome>> slots(targets.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= targets.size()) return;
      try {
        auto handle = prototype.fork();
        auto outcome =
            run_engine(cx, targets[i], handle, target_seed(cx.config.seed, i));
        if (outcome.queries != handle.query_count()) {
          throw std::logic_error("query accounting mismatch for " +
                                 targets[i].id);
        }
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(outcome);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mu);
        if (result.error.empty()) {
          result.error = "target " + targets[i].id + ": " + e.what();
        }
        stop.store(true);
        return;
      }
    }
  };
  const std::size_t n = std::min(cx.config.workers, std::max<std::size_t>(targets.size(), 1));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<InstanceRow> rows;
  std::vector<AttackTarget> done_targets;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!slots[i]) continue;
    rows.push_back(make_row(targets[i], *slots[i], *cx.embedder));
    result.victim_queries += slots[i]->queries;
    result.outcomes.push_back(std::move(*slots[i]));
    done_targets.push_back(targets[i]);
  }
  result.targets = std::move(done_targets);
  result.report = aggregate(std::move(rows));
}

inline std::vector<AttackTarget> prepare_targets(const CampaignConfig& config,
                                                 CampaignResult& result) {
  auto loaded = load_dataset(config.dataset, config.task);
  result.loaded = loaded.targets.size();
  result.skipped = loaded.skipped;
  for (const auto& d : loaded.diagnostics) {
    std::fprintf(stderr, "skipped %s\n", d.c_str());
  }
  if (config.limit > 0) {
    return sample_targets(loaded.targets, config.limit, config.sample_seed);
  }
  return loaded.targets;
}

/// Load, filter, attack, aggregate. Fatal module errors are recorded in
/// `error` with whatever finished.
inline CampaignResult run_campaign(const CampaignConfig& config) {
  validate(config);
  CampaignResult result;
  result.config = config;
  const auto targets = prepare_targets(config, result);
  const auto cx = make_context(config, targets);
  VictimHandle victim(config.task, cx.backend);
  result.targets = filter_attackable(targets, victim);
  result.filter_queries = victim.filter_query_count();
  attack_targets(cx, result, victim);
  return result;
}

// ----------------------------------------------------------------- output

inline nlohmann::json row_json(const InstanceRow& r) {
  return {{"id", r.id},
          {"success", r.success},
          {"queries", r.queries},
          {"renamed", r.changes.renamed},
          {"identifiers", r.changes.identifiers},
          {"changed_tokens", r.changes.changed_tokens},
          {"total_tokens", r.changes.total_tokens},
          {"acs", r.acs},
          {"aed", r.aed},
          {"objective", r.objective}};
}

inline nlohmann::json aggregate_json(const MetricsReport& r) {
  return {{"attackable", r.attackable}, {"successes", r.successes},
          {"empty", r.empty},           {"asr", r.asr},
          {"amq", r.amq},               {"amq_success", r.amq_success},
          {"icr", r.icr},               {"tcr", r.tcr},
          {"acs", r.acs},               {"aed", r.aed}};
}

inline nlohmann::json outcome_json(const AttackTarget& t, const AttackOutcome& o) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : o.trace) {
    trace.push_back({{"perturbation", e.perturbation},
                     {"objective", e.objective},
                     {"accepted", e.accepted}});
  }
  nlohmann::json repl = nlohmann::json::array();
  for (const auto& [from, to] : o.replacements.entries()) {
    repl.push_back({from, to});
  }
  return {{"id", t.id},
          {"engine", o.engine},
          {"success", o.success},
          {"original_code", t.code},
          {"adversarial_code", o.adversarial_code},
          {"replacements", repl},
          {"queries", o.queries},
          {"iterations", o.iterations},
          {"objective", o.objective},
          {"whole_variant", o.whole_variant},
          {"trace", trace}};
}

inline std::string fixed(double v, int digits = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

/// Plain-text table: one line per labelled report. ART is wall-clock and
/// only included on request so file reports stay reproducible.
inline std::string format_table(
    const std::vector<std::pair<std::string, MetricsReport>>& reports,
    bool with_art) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "engine" << std::right << std::setw(9)
      << "ASR(%)" << std::setw(10) << "AMQ";
  if (with_art) out << std::setw(10) << "ART(min)";
  out << std::setw(9) << "ICR(%)" << std::setw(9) << "TCR(%)" << std::setw(8)
      << "ACS" << std::setw(9) << "AED" << '\n';
  for (const auto& [label, r] : reports) {
    out << std::left << std::setw(16) << label << std::right;
    if (r.empty) {
      out << "  (no attackable targets)\n";
      continue;
    }
    out << std::setw(9) << fixed(r.asr) << std::setw(10) << fixed(r.amq);
    if (with_art) out << std::setw(10) << fixed(r.art_minutes, 4);
    out << std::setw(9) << fixed(r.icr) << std::setw(9) << fixed(r.tcr)
        << std::setw(8) << fixed(r.acs, 4) << std::setw(9) << fixed(r.aed)
        << '\n';
  }
  return out.str();
}

inline void write_text(const std::filesystem::path& path,
                       const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

/// report.jsonl, report.txt and outcomes.jsonl are reproducible;
/// timing.jsonl carries the wall-clock measurements.
inline void write_reports(const std::filesystem::path& dir,
                          const CampaignResult& r) {
  std::filesystem::create_directories(dir);
  std::string report, outcomes, timing;
  for (const auto& row : r.report.rows) report += row_json(row).dump() + '\n';
  report += nlohmann::json{{"aggregate", aggregate_json(r.report)},
                           {"engine", to_string(r.config.engine)},
                           {"task", to_string(r.config.task)}}
                .dump() +
            '\n';
  for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
    outcomes += outcome_json(r.targets[i], r.outcomes[i]).dump() + '\n';
    const auto& row = r.report.rows[i];
    timing += nlohmann::json{{"id", row.id},
                             {"wall_seconds", row.wall_seconds},
                             {"victim_seconds", row.victim_seconds},
                             {"attacker_seconds",
                              row.wall_seconds - row.victim_seconds}}
                  .dump() +
              '\n';
  }
  timing += nlohmann::json{{"art_minutes", r.report.art_minutes},
                           {"victim_minutes", r.report.victim_minutes}}
                .dump() +
            '\n';
  write_text(dir / "report.jsonl", report);
  write_text(dir / "outcomes.jsonl", outcomes);
  write_text(dir / "timing.jsonl", timing);
  write_text(dir / "report.txt",
             format_table({{std::string(to_string(r.config.engine)), r.report}},
                          false));
  const auto marker = dir / "PARTIAL";
  if (!r.error.empty()) {
    write_text(marker, r.error + '\n');
  } else if (std::filesystem::exists(marker)) {
    std::filesystem::remove(marker);
  }
}

/// Recomputes rows from an outcomes.jsonl file (and timing.jsonl when
/// present next to it).
inline MetricsReport recompute_report(const std::filesystem::path& outcomes,
                                      EmbeddingProvider& embedder) {
  std::ifstream in(outcomes);
  if (!in) throw std::runtime_error("cannot read " + outcomes.string());
  std::map<std::string, std::pair<double, double>> times;
  std::ifstream tin(outcomes.parent_path() / "timing.jsonl");
  for (std::string line; tin && std::getline(tin, line);) {
    const auto j = nlohmann::json::parse(line);
    if (j.contains("id")) {
      times[j["id"].get<std::string>()] = {j["wall_seconds"].get<double>(),
                                           j["victim_seconds"].get<double>()};
    }
  }
  std::vector<InstanceRow> rows;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    AttackTarget t;
    t.id = j.at("id").get<std::string>();
    t.code = j.at("original_code").get<std::string>();
    AttackOutcome o;
    o.success = j.at("success").get<bool>();
    o.adversarial_code = j.at("adversarial_code").get<std::string>();
    o.queries = j.at("queries").get<std::uint64_t>();
    o.objective = j.at("objective").get<double>();
    o.whole_variant = j.at("whole_variant").get<bool>();
    for (const auto& p : j.at("replacements")) {
      o.replacements.record(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    }
    if (auto it = times.find(t.id); it != times.end()) {
      o.wall_seconds = it->second.first;
      o.victim_seconds = it->second.second;
    }
    rows.push_back(make_row(t, o, embedder));
  }
  return aggregate(std::move(rows));
}

// ---------------------------------------------------------------- compare

struct MetricComparison {
  std::string metric;
  double a = 0.0, b = 0.0;  // means
  std::string better;       // "a", "b" or "" when equal
  double p = 1.0;           // one-sided, toward `better`
  bool significant = false;
};

struct Comparison {
  CampaignResult a, b;
  std::vector<MetricComparison> metrics;
};

/// One-sided test in the direction of the better mean.
inline MetricComparison compare_samples(std::string metric,
                                        const std::vector<double>& a,
                                        const std::vector<double>& b,
                                        bool lower_is_better) {
  MetricComparison m;
  m.metric = std::move(metric);
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  m.a = mean(a);
  m.b = mean(b);
  if (a.empty() || b.empty() || m.a == m.b) return m;
  const bool a_better = lower_is_better ? m.a < m.b : m.a > m.b;
  m.better = a_better ? "a" : "b";
  const auto alt = (a_better == lower_is_better) ? Alternative::Less
                                                 : Alternative::Greater;
  m.p = mann_whitney_u(a, b, alt).p;
  m.significant = m.p < 0.05;
  return m;
}

/// Runs both configurations on the same filtered target list (loaded and
/// filtered with the first configuration's victim).
inline Comparison compare_engines(const CampaignConfig& config_a,
                                  const CampaignConfig& config_b) {
  validate(config_a);
  validate(config_b);
  if (config_a.task != config_b.task || config_a.dataset != config_b.dataset) {
    throw ConfigError("compare: both configurations need the same task and dataset");
  }
  Comparison cmp;
  cmp.a.config = config_a;
  cmp.b.config = config_b;
  const auto loaded = prepare_targets(config_a, cmp.a);
  cmp.b.loaded = cmp.a.loaded;
  cmp.b.skipped = cmp.a.skipped;
  const auto cx_a = make_context(config_a, loaded);
  const auto cx_b = make_context(config_b, loaded);
  VictimHandle victim_a(config_a.task, cx_a.backend);
  cmp.a.targets = filter_attackable(loaded, victim_a);
  cmp.a.filter_queries = victim_a.filter_query_count();
  cmp.b.targets = cmp.a.targets;
  VictimHandle victim_b(config_b.task, cx_b.backend);
  attack_targets(cx_a, cmp.a, victim_a);
  attack_targets(cx_b, cmp.b, victim_b);

  auto column = [](const MetricsReport& r, auto f, bool successes_only) {
    std::vector<double> v;
    for (const auto& row : r.rows) {
      if (!successes_only || row.success) v.push_back(f(row));
    }
    return v;
  };
  const auto& ra = cmp.a.report;
  const auto& rb = cmp.b.report;
  auto ratio = [](std::size_t x, std::size_t y) {
    return y == 0 ? 0.0 : 100.0 * static_cast<double>(x) / static_cast<double>(y);
  };
  auto succ = [](const InstanceRow& r) { return r.success ? 100.0 : 0.0; };
  auto queries = [](const InstanceRow& r) { return static_cast<double>(r.queries); };
  auto minutes = [](const InstanceRow& r) { return r.wall_seconds / 60.0; };
  auto icr = [&](const InstanceRow& r) {
    return ratio(r.changes.renamed, r.changes.identifiers);
  };
  auto tcr = [&](const InstanceRow& r) {
    return ratio(r.changes.changed_tokens, r.changes.total_tokens);
  };
  auto acs_of = [](const InstanceRow& r) { return r.acs; };
  auto aed_of = [](const InstanceRow& r) { return r.aed; };
  cmp.metrics.push_back(compare_samples("ASR", column(ra, succ, false),
                                        column(rb, succ, false), false));
  cmp.metrics.push_back(compare_samples("AMQ", column(ra, queries, false),
                                        column(rb, queries, false), true));
  cmp.metrics.push_back(compare_samples("ART", column(ra, minutes, false),
                                        column(rb, minutes, false), true));
  cmp.metrics.push_back(compare_samples("ICR", column(ra, icr, true),
                                        column(rb, icr, true), true));
  cmp.metrics.push_back(compare_samples("TCR", column(ra, tcr, true),
                                        column(rb, tcr, true), true));
  cmp.metrics.push_back(compare_samples("ACS", column(ra, acs_of, true),
                                        column(rb, acs_of, true), false));
  cmp.metrics.push_back(compare_samples("AED", column(ra, aed_of, true),
                                        column(rb, aed_of, true), true));
  return cmp;
}

inline std::string format_comparison(const Comparison& cmp) {
  const std::string la(to_string(cmp.a.config.engine));
  std::string lb(to_string(cmp.b.config.engine));
  if (lb == la) lb += "(b)";
  std::ostringstream out;
  out << format_table({{la, cmp.a.report}, {lb, cmp.b.report}}, true) << '\n';
  out << std::left << std::setw(8) << "metric" << std::right << std::setw(14)
      << la << std::setw(14) << lb << std::setw(12) << "p" << "  better\n";
  for (const auto& m : cmp.metrics) {
    out << std::left << std::setw(8) << m.metric << std::right << std::setw(14)
        << fixed(m.a, 4) << std::setw(14) << fixed(m.b, 4) << std::setw(12)
        << fixed(m.p, 4) << "  "
        << (m.better.empty() ? "-" : (m.better == "a" ? la : lb))
        << (m.significant ? " *" : "") << '\n';
  }
  out << "* significant at p < 0.05 (one-sided Mann-Whitney U)\n";
  return out.str();
}

}  // namespace codeattack
