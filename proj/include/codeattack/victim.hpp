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
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "codeattack/metrics.hpp"
#include "codeattack/syntax/lexer.hpp"
#include "codeattack/types.hpp"

namespace codeattack {

/// A transient victim failure (timeout, connection refused, bad response).
/// The attempt is still charged to the query counter.
class RetryableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model under attack.
class VictimBackend {
 public:
  virtual ~VictimBackend() = default;
  virtual VictimResponse predict(TaskKind task, const std::string& code,
                                 const std::optional<std::string>& code2) = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

// ------------------------------------------------------------ surrogates

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::vector<std::string> word_tokens(const std::string& code) {
  std::vector<std::string> out;
  for (const auto& t : syntax::tokenize(code)) {
    if (t.kind == syntax::TokenKind::Identifier ||
        t.kind == syntax::TokenKind::Keyword ||
        t.kind == syntax::TokenKind::Literal) {
      out.push_back(code.substr(t.begin, t.size()));
    }
  }
  return out;
}

inline std::vector<std::string> camel_words(std::string_view name) {
  std::vector<std::string> words;
  std::string cur;
  auto lower = [](char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '_' || c == '$') {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
      continue;
    }
    const bool upper = c >= 'A' && c <= 'Z';
    const bool next_lower =
        i + 1 < name.size() && name[i + 1] >= 'a' && name[i + 1] <= 'z';
    const bool prev_upper = i > 0 && name[i - 1] >= 'A' && name[i - 1] <= 'Z';
    if (upper && !cur.empty() && (!prev_upper || next_lower)) {
      words.push_back(cur);
      cur.clear();
    }
    cur += lower(c);
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

}  // namespace detail

/// Clone surrogate: cosine similarity of the raw identifier/keyword/literal
/// lexeme multisets of the two snippets; a clone when above 0.5.
inline VictimResponse clone_surrogate(const std::string& code,
                                      const std::string& code2) {
  std::map<std::string, std::pair<double, double>> counts;
  for (const auto& w : detail::word_tokens(code)) counts[w].first += 1;
  for (const auto& w : detail::word_tokens(code2)) counts[w].second += 1;
  double dot = 0, na = 0, nb = 0;
  for (const auto& [w, c] : counts) {
    dot += c.first * c.second;
    na += c.first * c.first;
    nb += c.second * c.second;
  }
  const double sim =
      na == 0 || nb == 0 ? 0.0 : dot / (std::sqrt(na) * std::sqrt(nb));
  VictimResponse r;
  r.probs = {1.0 - sim, sim};
  r.label = sim > 0.5 ? 1 : 0;
  return r;
}

inline constexpr std::uint64_t kVulnerabilityWeightSeed = 0x5eed0f0c0dea77acULL;
inline constexpr std::size_t kVulnerabilityBuckets = 4096;

/// Vulnerability surrogate: logistic model over hashed unigram and bigram
/// lexeme features. Weights are fixed pseudo-random values in [-1, 1]
/// derived from a constant seed.
inline VictimResponse vulnerability_surrogate(const std::string& code) {
  std::vector<std::string> lex;
  for (const auto& t : syntax::tokenize(code)) {
    if (!t.is_trivia()) lex.push_back(code.substr(t.begin, t.size()));
  }
  auto weight = [](std::uint64_t h) {
    const auto bucket = h % kVulnerabilityBuckets;
    const auto bits = detail::splitmix64(bucket ^ kVulnerabilityWeightSeed);
    return static_cast<double>(bits >> 11) / static_cast<double>(1ULL << 53) *
               2.0 -
           1.0;
  };
  double z = 0.0;
  for (std::size_t i = 0; i < lex.size(); ++i) {
    z += weight(fnv1a(lex[i]));
    if (i + 1 < lex.size()) z += weight(fnv1a(lex[i + 1], fnv1a(lex[i] + " ")));
  }
  const double n = static_cast<double>(std::max<std::size_t>(lex.size(), 1));
  const double score = 3.0 * z / std::sqrt(n);
  const double p1 = 1.0 / (1.0 + std::exp(-score));
  VictimResponse r;
  r.probs = {1.0 - p1, p1};
  r.label = p1 > 0.5 ? 1 : 0;
  return r;
}

/// Summarization surrogate: camel-case words of the method name followed by
/// the words of the three most frequent other identifiers.
inline VictimResponse summarization_surrogate(const std::string& code) {
  VictimResponse r;
  std::string method;
  try {
    if (auto m = parse(code).method_name()) method = *m;
  } catch (const syntax::SyntaxError&) {
  }
  std::vector<std::string> order;
  std::map<std::string, std::size_t> freq;
  for (const auto& t : syntax::tokenize(code)) {
    if (t.kind != syntax::TokenKind::Identifier) continue;
    auto w = code.substr(t.begin, t.size());
    if (w == method) continue;
    if (freq[w]++ == 0) order.push_back(w);
  }
  std::stable_sort(order.begin(), order.end(), [&](auto& a, auto& b) {
    return freq[a] > freq[b];
  });
  for (const auto& w : detail::camel_words(method)) r.summary.push_back(w);
  for (std::size_t i = 0; i < order.size() && i < 3; ++i) {
    for (const auto& w : detail::camel_words(order[i])) r.summary.push_back(w);
  }
  return r;
}

/// Deterministic in-process victim for all three tasks.
class LocalSurrogate : public VictimBackend {
 public:
  VictimResponse predict(TaskKind task, const std::string& code,
                         const std::optional<std::string>& code2) override {
    switch (task) {
      case TaskKind::CloneDetection:
        if (!code2) throw std::invalid_argument("clone scoring needs a pair");
        return clone_surrogate(code, *code2);
      case TaskKind::VulnerabilityDetection:
        return vulnerability_surrogate(code);
      case TaskKind::CodeSummarization:
        return summarization_surrogate(code);
    }
    return {};
  }
  [[nodiscard]] std::string name() const override { return "local"; }
};

// ---------------------------------------------------------------- remote

struct RemoteOptions {
  std::string endpoint = "http://127.0.0.1:8080";
  std::size_t max_in_flight = 4;
  double timeout_seconds = 30.0;
};

/// JSON-over-HTTP client for the model service: POST /predict, /embed and
/// /fillmask.
class RemoteClient {
 public:
  explicit RemoteClient(RemoteOptions options)
      : options_(std::move(options)),
        slots_(static_cast<std::ptrdiff_t>(
            std::clamp<std::size_t>(options_.max_in_flight, 1, kMaxSlots))) {}

  [[nodiscard]] const RemoteOptions& options() const { return options_; }

  nlohmann::json post(const std::string& path, const nlohmann::json& body) {
    slots_.acquire();
    struct Release {
      std::counting_semaphore<kMaxSlots>& s;
      ~Release() { s.release(); }
    } release{slots_};
    httplib::Client client(options_.endpoint);
    const auto secs = static_cast<time_t>(options_.timeout_seconds);
    const auto usecs = static_cast<time_t>(
        (options_.timeout_seconds - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    auto res = client.Post(path, body.dump(), "application/json");
    if (!res) {
      throw RetryableError("request to " + options_.endpoint + path +
                           " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw RetryableError("request to " + path + " returned HTTP " +
                           std::to_string(res->status) + ": " + res->body);
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception& e) {
      throw RetryableError("malformed response from " + path + ": " +
                           e.what());
    }
  }

  VictimResponse predict(TaskKind task, const std::string& code,
                         const std::optional<std::string>& code2) {
    nlohmann::json body{{"task", std::string(to_string(task))},
                        {"code", code}};
    if (code2) body["code2"] = *code2;
    const auto j = post("/predict", body);
    VictimResponse r;
    try {
      if (is_understanding(task)) {
        r.label = j.at("label").get<int>();
        const auto p = j.at("probs").get<std::vector<double>>();
        if (p.size() != 2) throw RetryableError("probs must have 2 entries");
        r.probs = {p[0], p[1]};
      } else {
        r.summary = split_words(j.at("summary").get<std::string>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw RetryableError(std::string("malformed /predict response: ") +
                           e.what());
    }
    return r;
  }

  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) {
    const auto j = post("/embed", nlohmann::json{{"texts", texts}});
    try {
      return j.at("vectors").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
      throw RetryableError(std::string("malformed /embed response: ") +
                           e.what());
    }
  }

  /// Raw fill-mask suggestions for every occurrence of `identifier`.
  std::vector<std::pair<std::string, double>> fillmask(
      const std::string& code, const std::string& identifier) {
    const auto j = post("/fillmask", nlohmann::json{{"code", code},
                                                    {"mask_identifier", identifier}});
    try {
      const auto names = j.at("candidates").get<std::vector<std::string>>();
      std::vector<double> scores(names.size(), 0.0);
      if (j.contains("scores")) scores = j.at("scores").get<std::vector<double>>();
      if (scores.size() != names.size()) {
        throw RetryableError("fillmask candidates/scores length mismatch");
      }
      std::vector<std::pair<std::string, double>> out;
      for (std::size_t i = 0; i < names.size(); ++i) {
        out.emplace_back(names[i], scores[i]);
      }
      return out;
    } catch (const nlohmann::json::exception& e) {
      throw RetryableError(std::string("malformed /fillmask response: ") +
                           e.what());
    }
  }

 private:
  static constexpr std::ptrdiff_t kMaxSlots = 1024;
  RemoteOptions options_;
  std::counting_semaphore<kMaxSlots> slots_;
};

class RemoteVictim : public VictimBackend {
 public:
  explicit RemoteVictim(std::shared_ptr<RemoteClient> client)
      : client_(std::move(client)) {}
  VictimResponse predict(TaskKind task, const std::string& code,
                         const std::optional<std::string>& code2) override {
    return client_->predict(task, code, code2);
  }
  [[nodiscard]] std::string name() const override { return "remote"; }

 private:
  std::shared_ptr<RemoteClient> client_;
};

class RemoteEmbedder : public EmbeddingProvider {
 public:
  explicit RemoteEmbedder(std::shared_ptr<RemoteClient> client)
      : client_(std::move(client)) {}
  std::vector<std::vector<double>> embed(
      const std::vector<std::string>& texts) override {
    return client_->embed(texts);
  }
  [[nodiscard]] std::string name() const override { return "remote"; }

 private:
  std::shared_ptr<RemoteClient> client_;
};

// ---------------------------------------------------------------- handle

/// Query-counted access to a victim. Copies share counters; fork() opens a
/// fresh counter scope over the same backend.
class VictimHandle {
 public:
  VictimHandle(TaskKind task, std::shared_ptr<VictimBackend> backend)
      : task_(task),
        backend_(std::move(backend)),
        counters_(std::make_shared<Counters>()) {}

  [[nodiscard]] TaskKind task() const { return task_; }
  [[nodiscard]] const VictimBackend& backend() const { return *backend_; }

  /// One attack query.
  VictimResponse score(const std::string& code,
                       const std::optional<std::string>& paired = {}) {
    counters_->queries.fetch_add(1, std::memory_order_relaxed);
    return timed(code, paired);
  }

  /// Pre-attack query (correctness filtering); metered separately.
  VictimResponse score_unmetered(const std::string& code,
                                 const std::optional<std::string>& paired = {}) {
    counters_->filter_queries.fetch_add(1, std::memory_order_relaxed);
    return timed(code, paired);
  }

  [[nodiscard]] std::uint64_t query_count() const {
    return counters_->queries.load(std::memory_order_relaxed);
  }
  [[nodiscard]] std::uint64_t filter_query_count() const {
    return counters_->filter_queries.load(std::memory_order_relaxed);
  }
  [[nodiscard]] double time_spent() const {
    return static_cast<double>(
               counters_->nanos.load(std::memory_order_relaxed)) *
           1e-9;
  }

  [[nodiscard]] VictimHandle fork() const {
    return VictimHandle(task_, backend_);
  }

 private:
  struct Counters {
    std::atomic<std::uint64_t> queries{0};
    std::atomic<std::uint64_t> filter_queries{0};
    std::atomic<std::int64_t> nanos{0};
  };

  VictimResponse timed(const std::string& code,
                       const std::optional<std::string>& paired) {
    const auto start = std::chrono::steady_clock::now();
    struct Charge {
      Counters& c;
      std::chrono::steady_clock::time_point start;
      ~Charge() {
        c.nanos.fetch_add(std::chrono::duration_cast<std::chrono::nanoseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count(),
                          std::memory_order_relaxed);
      }
    } charge{*counters_, start};
    return backend_->predict(task_, code, paired);
  }

  TaskKind task_;
  std::shared_ptr<VictimBackend> backend_;
  std::shared_ptr<Counters> counters_;
};

/// Attack success: a flipped label, or a summary sharing no 4-gram-BLEU
/// credit with the reference.
inline bool is_success(TaskKind task, const AttackTarget& target,
                       const VictimResponse& response) {
  if (is_understanding(task)) return response.label != target.label();
  return bleu4(response.summary, target.summary()) == 0.0;
}

inline bool is_success(const VictimHandle& handle, const AttackTarget& target,
                       const VictimResponse& response) {
  return is_success(handle.task(), target, response);
}

/// Scalar minimized by every engine: probability of the true label, or the
/// BLEU-4 of the current summary against the unperturbed one.
inline double objective(const AttackTarget& target,
                        const VictimResponse& baseline,
                        const VictimResponse& response) {
  if (is_understanding(target.task)) {
    return response.probs[static_cast<std::size_t>(target.label() == 1)];
  }
  return bleu4(response.summary, baseline.summary);
}

}  // namespace codeattack
