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
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "codeattack/corpus.hpp"
#include "codeattack/metrics.hpp"
#include "codeattack/syntax/snippet.hpp"
#include "codeattack/victim.hpp"

namespace codeattack {

inline constexpr std::size_t kDefaultCandidates = 30;

enum class CandidateStrategy : std::uint8_t { Random, Cosine, ContextAware };

struct CandidateList {
  std::string identifier;
  std::vector<std::string> candidates;
  CandidateStrategy strategy = CandidateStrategy::Random;
  bool exhausted = false;  // fewer than k valid names were available
  bool fallback = false;   // cosine lookup fell back to random
};

namespace detail {

inline bool acceptable(const CodeSnippet& snippet, const std::string& identifier,
                       const std::string& name) {
  return name != identifier && !rename_violation(snippet, identifier, name);
}

inline void require_identifier(const CodeSnippet& snippet,
                               const std::string& identifier) {
  if (!snippet.has_identifier(identifier)) {
    throw std::invalid_argument("'" + identifier +
                                "' is not an identifier of the snippet");
  }
}

}  // namespace detail

/// Up to k valid names drawn without replacement from `vocab`.
inline CandidateList random_candidates(const CodeSnippet& snippet,
                                       const std::string& identifier,
                                       const Vocabulary& vocab,
                                       std::size_t k = kDefaultCandidates,
                                       std::uint64_t seed = 0) {
  detail::require_identifier(snippet, identifier);
  CandidateList out{identifier, {}, CandidateStrategy::Random};
  std::vector<std::size_t> idx(vocab.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::set<std::string> seen;
  // Incremental Fisher-Yates: stop as soon as k valid names are found.
  for (std::size_t i = 0; i < idx.size() && out.candidates.size() < k; ++i) {
    const auto j = std::uniform_int_distribution<std::size_t>(
        i, idx.size() - 1)(rng);
    std::swap(idx[i], idx[j]);
    const auto& name = vocab[idx[i]];
    if (!detail::acceptable(snippet, identifier, name)) continue;
    if (!seen.insert(name).second) continue;
    out.candidates.push_back(name);
  }
  out.exhausted = out.candidates.size() < k;
  return out;
}

/// Name -> vector table. A hashed table embeds any name on demand.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::vector<std::string> vocab,
                 std::vector<std::vector<double>> vectors)
      : vocab_(std::move(vocab)), vectors_(std::move(vectors)) {
    if (vocab_.size() != vectors_.size()) {
      throw std::invalid_argument("vocab/vector count mismatch");
    }
    dim_ = vectors_.empty() ? 0 : vectors_[0].size();
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      if (vectors_[i].size() != dim_) {
        throw std::invalid_argument("vector dimension mismatch at '" +
                                    vocab_[i] + "'");
      }
      if (!index_.emplace(vocab_[i], i).second) {
        throw std::invalid_argument("duplicate vocab entry '" + vocab_[i] +
                                    "'");
      }
    }
  }

  /// Character-trigram table over `vocab`; the offline default.
  static EmbeddingTable trigram(const std::vector<std::string>& vocab,
                                std::size_t dim = 256) {
    std::vector<std::vector<double>> vectors;
    vectors.reserve(vocab.size());
    for (const auto& v : vocab) vectors.push_back(trigram_vector(v, dim));
    EmbeddingTable t(vocab, std::move(vectors));
    t.dim_ = dim;
    t.hashed_ = true;
    return t;
  }

  [[nodiscard]] const std::vector<std::string>& vocab() const { return vocab_; }
  [[nodiscard]] const std::vector<std::vector<double>>& vectors() const {
    return vectors_;
  }
  [[nodiscard]] std::size_t dimension() const { return dim_; }
  [[nodiscard]] bool hashed() const { return hashed_; }

  [[nodiscard]] std::optional<std::vector<double>> vector_of(
      const std::string& name) const {
    auto it = index_.find(name);
    if (it != index_.end()) return vectors_[it->second];
    if (hashed_) return trigram_vector(name, dim_);
    return std::nullopt;
  }

 private:
  std::vector<std::string> vocab_;
  std::vector<std::vector<double>> vectors_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t dim_ = 0;
  bool hashed_ = false;
};

/// Reads "<count> <dim>" then one "<name> v1 ... vdim" line per entry.
inline EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read embeddings: " + path);
  std::size_t count = 0, dim = 0;
  if (!(in >> count >> dim)) {
    throw std::runtime_error("bad embedding header in " + path);
  }
  std::vector<std::string> vocab(count);
  std::vector<std::vector<double>> vectors(count, std::vector<double>(dim));
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> vocab[i])) {
      throw std::runtime_error("embedding file truncated at entry " +
                               std::to_string(i));
    }
    for (auto& x : vectors[i]) {
      if (!(in >> x)) {
        throw std::runtime_error("bad vector for '" + vocab[i] + "'");
      }
    }
  }
  return EmbeddingTable(std::move(vocab), std::move(vectors));
}

inline void save_embeddings(const EmbeddingTable& table,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write embeddings: " + path);
  out.precision(17);
  out << table.vocab().size() << ' ' << table.dimension() << '\n';
  for (std::size_t i = 0; i < table.vocab().size(); ++i) {
    out << table.vocab()[i];
    for (double x : table.vectors()[i]) out << ' ' << x;
    out << '\n';
  }
}

/// The k valid names most cosine-similar to `identifier` (descending, ties
/// by name). Falls back to random draws from the table vocabulary when the
/// identifier has no vector.
inline CandidateList cosine_candidates(const EmbeddingTable& table,
                                       const CodeSnippet& snippet,
                                       const std::string& identifier,
                                       std::size_t k = kDefaultCandidates,
                                       std::uint64_t fallback_seed = 0) {
  detail::require_identifier(snippet, identifier);
  const auto query = table.vector_of(identifier);
  if (!query) {
    auto r = random_candidates(snippet, identifier, table.vocab(), k,
                               fallback_seed);
    r.fallback = true;
    return r;
  }
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(table.vocab().size());
  for (std::size_t i = 0; i < table.vocab().size(); ++i) {
    if (!detail::acceptable(snippet, identifier, table.vocab()[i])) continue;
    scored.emplace_back(cosine(*query, table.vectors()[i]), i);
  }
  const auto take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(take),
                    scored.end(), [&](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return table.vocab()[a.second] < table.vocab()[b.second];
                    });
  CandidateList out{identifier, {}, CandidateStrategy::Cosine};
  for (std::size_t i = 0; i < take; ++i) {
    out.candidates.push_back(table.vocab()[scored[i].second]);
  }
  out.exhausted = out.candidates.size() < k;
  return out;
}

/// Masked-prediction candidates from the model service, in service order,
/// filtered to valid fresh names.
inline CandidateList contextaware_candidates(RemoteClient& remote,
                                             const CodeSnippet& snippet,
                                             const std::string& identifier,
                                             std::size_t k = kDefaultCandidates) {
  detail::require_identifier(snippet, identifier);
  CandidateList out{identifier, {}, CandidateStrategy::ContextAware};
  std::set<std::string> seen;
  for (const auto& [name, score] : remote.fillmask(snippet.source(), identifier)) {
    if (out.candidates.size() >= k) break;
    if (!detail::acceptable(snippet, identifier, name)) continue;
    if (!seen.insert(name).second) continue;
    out.candidates.push_back(name);
  }
  out.exhausted = out.candidates.size() < k;
  return out;
}

/// Candidate source used by engines that take a pluggable strategy.
class CandidateProvider {
 public:
  virtual ~CandidateProvider() = default;
  virtual CandidateList candidates(const CodeSnippet& snippet,
                                   const std::string& identifier,
                                   std::size_t k) = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

class RandomProvider : public CandidateProvider {
 public:
  RandomProvider(Vocabulary vocab, std::uint64_t seed)
      : vocab_(std::move(vocab)), rng_(seed) {}
  CandidateList candidates(const CodeSnippet& snippet,
                           const std::string& identifier,
                           std::size_t k) override {
    return random_candidates(snippet, identifier, vocab_, k, rng_());
  }
  [[nodiscard]] std::string name() const override { return "random"; }

 private:
  Vocabulary vocab_;
  std::mt19937_64 rng_;
};

class CosineProvider : public CandidateProvider {
 public:
  explicit CosineProvider(std::shared_ptr<const EmbeddingTable> table)
      : table_(std::move(table)) {}
  CandidateList candidates(const CodeSnippet& snippet,
                           const std::string& identifier,
                           std::size_t k) override {
    return cosine_candidates(*table_, snippet, identifier, k);
  }
  [[nodiscard]] std::string name() const override { return "cosine"; }

 private:
  std::shared_ptr<const EmbeddingTable> table_;
};

/// Fill-mask candidates; on a remote failure the optional fallback is used.
class ContextAwareProvider : public CandidateProvider {
 public:
  ContextAwareProvider(std::shared_ptr<RemoteClient> remote,
                       std::shared_ptr<CandidateProvider> fallback = nullptr)
      : remote_(std::move(remote)), fallback_(std::move(fallback)) {}
  CandidateList candidates(const CodeSnippet& snippet,
                           const std::string& identifier,
                           std::size_t k) override {
    try {
      return contextaware_candidates(*remote_, snippet, identifier, k);
    } catch (const RetryableError&) {
      if (!fallback_) throw;
      auto r = fallback_->candidates(snippet, identifier, k);
      r.fallback = true;
      return r;
    }
  }
  [[nodiscard]] std::string name() const override { return "contextaware"; }

 private:
  std::shared_ptr<RemoteClient> remote_;
  std::shared_ptr<CandidateProvider> fallback_;
};

}  // namespace codeattack
