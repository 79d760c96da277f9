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
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "codeattack/syntax/lexer.hpp"
#include "codeattack/syntax/snippet.hpp"
#include "codeattack/types.hpp"

namespace codeattack {

// ------------------------------------------------------------------ BLEU

namespace detail {

inline std::map<std::vector<std::string>, std::size_t> ngram_counts(
    const std::vector<std::string>& words, std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    ++counts[std::vector<std::string>(words.begin() + i,
                                      words.begin() + i + n)];
  }
  return counts;
}

// Clipped matches and candidate n-gram total at order n.
inline std::pair<std::size_t, std::size_t> modified_precision(
    const std::vector<std::string>& candidate,
    const std::vector<std::string>& reference, std::size_t n) {
  const auto cand = ngram_counts(candidate, n);
  const auto ref = ngram_counts(reference, n);
  std::size_t matched = 0;
  std::size_t total = 0;
  for (const auto& [gram, count] : cand) {
    total += count;
    auto it = ref.find(gram);
    if (it != ref.end()) matched += std::min(count, it->second);
  }
  return {matched, total};
}

inline double brevity_penalty(std::size_t c, std::size_t r) {
  if (c == 0) return 0.0;
  if (c > r) return 1.0;
  return std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
}

}  // namespace detail

/// Sentence BLEU-4: uniform weights over n = 1..4, brevity penalty, no
/// smoothing. Any order with zero matches gives 0.
inline double bleu4(const std::vector<std::string>& candidate,
                    const std::vector<std::string>& reference) {
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto [matched, total] =
        detail::modified_precision(candidate, reference, n);
    if (matched == 0 || total == 0) return 0.0;
    log_sum += std::log(static_cast<double>(matched) /
                        static_cast<double>(total));
  }
  return detail::brevity_penalty(candidate.size(), reference.size()) *
         std::exp(log_sum / 4.0);
}

/// BLEU-4 with add-one smoothing on orders 2..4; informational only.
inline double bleu4_smoothed(const std::vector<std::string>& candidate,
                             const std::vector<std::string>& reference) {
  if (candidate.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto [matched, total] = detail::modified_precision(candidate, reference, n);
    double p = 0.0;
    if (n == 1) {
      if (matched == 0) return 0.0;
      p = static_cast<double>(matched) / static_cast<double>(total);
    } else {
      p = (static_cast<double>(matched) + 1.0) /
          (static_cast<double>(total) + 1.0);
    }
    log_sum += std::log(p);
  }
  return detail::brevity_penalty(candidate.size(), reference.size()) *
         std::exp(log_sum / 4.0);
}

// --------------------------------------------------------- edit distances

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Significant-token lexemes of Java source.
inline std::vector<std::string> code_tokens(std::string_view source) {
  std::vector<std::string> out;
  for (const auto& t : syntax::tokenize(source)) {
    if (!t.is_trivia()) out.emplace_back(source.substr(t.begin, t.size()));
  }
  return out;
}

/// Token-aligned edit distance: substituting token x by y costs
/// levenshtein(x, y); inserting or deleting a token costs its length.
inline std::size_t token_edit_distance(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t j = 1; j <= b.size(); ++j) row[j] = row[j - 1] + b[j - 1].size();
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] += a[i - 1].size();
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub =
          a[i - 1] == b[j - 1] ? 0 : levenshtein(a[i - 1], b[j - 1]);
      row[j] = std::min({up + a[i - 1].size(), row[j - 1] + b[j - 1].size(),
                         diag + sub});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Character-level edit effort between two programs, aligned by token.
inline std::size_t aed(std::string_view original, std::string_view adversarial) {
  return token_edit_distance(code_tokens(original), code_tokens(adversarial));
}

struct EditScriptCounts {
  std::size_t matched = 0;
  std::size_t substituted = 0;
  std::size_t inserted = 0;
  std::size_t deleted = 0;
};

/// Unit-cost edit script from `a` to `b`; among minimum-cost scripts the one
/// with the most matches is chosen.
inline EditScriptCounts edit_script(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  struct Cell {
    std::size_t cost;
    std::size_t matched;
    EditScriptCounts counts;
  };
  auto better = [](const Cell& x, const Cell& y) {
    return x.cost < y.cost || (x.cost == y.cost && x.matched > y.matched);
  };
  std::vector<std::vector<Cell>> d(a.size() + 1,
                                   std::vector<Cell>(b.size() + 1));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    d[i][0] = d[i - 1][0];
    d[i][0].cost += 1;
    d[i][0].counts.deleted += 1;
  }
  for (std::size_t j = 1; j <= b.size(); ++j) {
    d[0][j] = d[0][j - 1];
    d[0][j].cost += 1;
    d[0][j].counts.inserted += 1;
  }
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      Cell best = d[i - 1][j - 1];
      if (a[i - 1] == b[j - 1]) {
        best.matched += 1;
        best.counts.matched += 1;
      } else {
        best.cost += 1;
        best.counts.substituted += 1;
      }
      Cell del = d[i - 1][j];
      del.cost += 1;
      del.counts.deleted += 1;
      Cell ins = d[i][j - 1];
      ins.cost += 1;
      ins.counts.inserted += 1;
      if (better(del, best)) best = del;
      if (better(ins, best)) best = ins;
      d[i][j] = best;
    }
  }
  return d[a.size()][b.size()].counts;
}

// ---------------------------------------------------------------- ICR/TCR

struct ChangeCounts {
  std::size_t renamed = 0;         // n_i
  std::size_t identifiers = 0;     // m_i
  std::size_t changed_tokens = 0;
  std::size_t total_tokens = 0;
};

/// Identifier and token change counts of one outcome. Identifier-only
/// outcomes compare token streams position by position; whole-variant
/// outcomes (style rewrites) use an edit script and count substituted plus
/// inserted tokens.
inline ChangeCounts icr_tcr(const CodeSnippet& original,
                            const AttackOutcome& outcome) {
  ChangeCounts c;
  c.identifiers = original.identifiers().size();
  c.renamed = outcome.replacements.changed();
  const auto a = code_tokens(original.source());
  const auto b = code_tokens(outcome.adversarial_code.empty()
                                 ? original.source()
                                 : outcome.adversarial_code);
  c.total_tokens = a.size();
  if (!outcome.whole_variant && a.size() == b.size()) {
    for (std::size_t i = 0; i < a.size(); ++i) c.changed_tokens += a[i] != b[i];
  } else {
    const auto s = edit_script(a, b);
    c.changed_tokens = s.substituted + s.inserted;
  }
  return c;
}

// ------------------------------------------------------------- embeddings

/// Text embedding backend used for ACS.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<std::vector<double>> embed(
      const std::vector<std::string>& texts) = 0;
  [[nodiscard]] virtual std::string name() const = 0;
};

inline std::uint64_t fnv1a(std::string_view s,
                           std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Hashed character-trigram vector of `text` with '^'/'$' boundary marks,
/// L2-normalized.
inline std::vector<double> trigram_vector(std::string_view text,
                                          std::size_t dim) {
  if (text.empty()) throw std::invalid_argument("cannot embed empty text");
  std::string padded = "^" + std::string(text) + "$";
  std::vector<double> v(dim, 0.0);
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
    v[fnv1a(std::string_view(padded).substr(i, 3)) % dim] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

inline double cosine(const std::vector<double>& a,
                     const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

/// Offline stand-in for model embeddings: hashed character trigrams.
class TrigramEmbedder : public EmbeddingProvider {
 public:
  explicit TrigramEmbedder(std::size_t dim = 512) : dim_(dim) {}
  std::vector<std::vector<double>> embed(
      const std::vector<std::string>& texts) override {
    std::vector<std::vector<double>> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(trigram_vector(t, dim_));
    return out;
  }
  [[nodiscard]] std::string name() const override { return "local-trigram"; }

 private:
  std::size_t dim_;
};

inline double acs(EmbeddingProvider& provider, const std::string& original,
                  const std::string& adversarial) {
  if (original.empty() || adversarial.empty()) {
    throw std::invalid_argument("acs: empty text has no embedding");
  }
  const auto v = provider.embed({original, adversarial});
  if (v.size() != 2) throw std::runtime_error("acs: provider returned " +
                                              std::to_string(v.size()) +
                                              " vectors");
  return cosine(v[0], v[1]);
}

// -------------------------------------------------------------- reports

struct InstanceRow {
  std::string id;
  bool success = false;
  std::uint64_t queries = 0;
  double wall_seconds = 0.0;
  double victim_seconds = 0.0;
  ChangeCounts changes;
  double acs = 0.0;
  double aed = 0.0;
  double objective = 0.0;
};

struct MetricsReport {
  std::vector<InstanceRow> rows;
  bool empty = true;
  std::size_t attackable = 0;
  std::size_t successes = 0;
  double asr = 0.0;          // percent
  double amq = 0.0;          // over attempted instances
  double amq_success = 0.0;  // over successful instances
  double art_minutes = 0.0;
  double victim_minutes = 0.0;
  double icr = 0.0;  // pooled percent over successes
  double tcr = 0.0;  // pooled percent over successes
  double acs = 0.0;
  double aed = 0.0;
};

inline MetricsReport aggregate(std::vector<InstanceRow> rows) {
  MetricsReport r;
  r.rows = std::move(rows);
  r.attackable = r.rows.size();
  r.empty = r.attackable == 0;
  if (r.empty) return r;
  double queries = 0, success_queries = 0, wall = 0, victim = 0;
  double acs_sum = 0, aed_sum = 0;
  std::size_t n = 0, m = 0, changed = 0, total = 0;
  for (const auto& row : r.rows) {
    queries += static_cast<double>(row.queries);
    wall += row.wall_seconds;
    victim += row.victim_seconds;
    if (!row.success) continue;
    ++r.successes;
    success_queries += static_cast<double>(row.queries);
    n += row.changes.renamed;
    m += row.changes.identifiers;
    changed += row.changes.changed_tokens;
    total += row.changes.total_tokens;
    acs_sum += row.acs;
    aed_sum += row.aed;
  }
  const auto attempted = static_cast<double>(r.attackable);
  r.asr = 100.0 * static_cast<double>(r.successes) / attempted;
  r.amq = queries / attempted;
  r.art_minutes = wall / attempted / 60.0;
  r.victim_minutes = victim / attempted / 60.0;
  if (r.successes > 0) {
    const auto s = static_cast<double>(r.successes);
    r.amq_success = success_queries / s;
    r.acs = acs_sum / s;
    r.aed = aed_sum / s;
  }
  if (m > 0) r.icr = 100.0 * static_cast<double>(n) / static_cast<double>(m);
  if (total > 0) {
    r.tcr = 100.0 * static_cast<double>(changed) / static_cast<double>(total);
  }
  return r;
}

// -------------------------------------------------------- Mann-Whitney U

enum class Alternative : std::uint8_t {
  Less,     // sample a tends to be smaller than b
  Greater,  // sample a tends to be larger than b
  TwoSided,
};

struct MannWhitneyResult {
  double u = 0.0;  // U statistic of sample a
  double p = 1.0;
  bool exact = false;
};

/// Mann-Whitney U test with midranks for ties. Exact permutation
/// distribution when both samples have at most 20 values, normal
/// approximation with tie and continuity correction otherwise.
inline MannWhitneyResult mann_whitney_u(const std::vector<double>& a,
                                        const std::vector<double>& b,
                                        Alternative alt) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("mann_whitney_u: empty sample");
  }
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;
  std::vector<std::pair<double, int>> pooled;
  for (double x : a) pooled.emplace_back(x, 0);
  for (double x : b) pooled.emplace_back(x, 1);
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](auto& l, auto& r) { return l.first < r.first; });
  // Doubled midranks keep every rank integral.
  std::vector<std::uint64_t> rank2(n);
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    for (std::size_t k = i; k < j; ++k) rank2[k] = i + j + 1;  // 2 * midrank
    ties.push_back(j - i);
    i = j;
  }
  std::uint64_t r2 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (pooled[k].second == 0) r2 += rank2[k];
  }
  MannWhitneyResult res;
  res.u = static_cast<double>(r2) / 2.0 -
          static_cast<double>(na * (na + 1)) / 2.0;

  if (std::max(na, nb) <= 20) {
    res.exact = true;
    const std::uint64_t max_sum =
        std::accumulate(rank2.begin(), rank2.end(), std::uint64_t{0});
    // ways[c][s]: subsets of c values with doubled-rank sum s
    std::vector<std::vector<double>> ways(
        na + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = std::min(na, k + 1); c >= 1; --c) {
        for (std::uint64_t s = max_sum; s >= rank2[k]; --s) {
          ways[c][s] += ways[c - 1][s - rank2[k]];
        }
      }
    }
    double total = 0, le = 0, ge = 0;
    for (std::uint64_t s = 0; s <= max_sum; ++s) {
      total += ways[na][s];
      if (s <= r2) le += ways[na][s];
      if (s >= r2) ge += ways[na][s];
    }
    const double p_less = le / total;
    const double p_greater = ge / total;
    switch (alt) {
      case Alternative::Less: res.p = p_less; break;
      case Alternative::Greater: res.p = p_greater; break;
      case Alternative::TwoSided:
        res.p = std::min(1.0, 2.0 * std::min(p_less, p_greater));
        break;
    }
    return res;
  }

  const double mu = static_cast<double>(na) * static_cast<double>(nb) / 2.0;
  double tie_term = 0.0;
  for (auto t : ties) {
    const auto td = static_cast<double>(t);
    tie_term += td * td * td - td;
  }
  const auto nd = static_cast<double>(n);
  const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                     ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
  if (var <= 0.0) {
    res.p = alt == Alternative::TwoSided ? 1.0 : 0.5;
    return res;
  }
  const double sd = std::sqrt(var);
  auto upper = [](double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); };
  const double p_greater = upper((res.u - mu - 0.5) / sd);
  const double p_less = 1.0 - upper((res.u - mu + 0.5) / sd);
  switch (alt) {
    case Alternative::Less: res.p = p_less; break;
    case Alternative::Greater: res.p = p_greater; break;
    case Alternative::TwoSided:
      res.p = std::min(1.0, 2.0 * std::min(p_less, p_greater));
      break;
  }
  return res;
}

}  // namespace codeattack
