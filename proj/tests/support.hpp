// Copyright 2026 The ctr Authors.
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

// Independent reference computations and random generators for the tests.
#ifndef CTR_TESTS_SUPPORT_HPP_
#define CTR_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ctr/corpus.hpp"

namespace ctr::test {

inline std::filesystem::path data_dir() { return CTR_TEST_DATA_DIR; }

// ---- Oracles -----------------------------------------------------------------

// Matched characters of the recursive longest-common-block decomposition,
// searching every (i, j, k) triple. Ties go to the smallest i, then j.
inline std::size_t gestalt_matches(const std::u32string& a, const std::u32string& b) {
  std::size_t best_i = 0, best_j = 0, best_k = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = 0;
      while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
      if (k > best_k) std::tie(best_i, best_j, best_k) = std::tuple(i, j, k);
    }
  if (best_k == 0) return 0;
  return best_k + gestalt_matches(a.substr(0, best_i), b.substr(0, best_j)) +
         gestalt_matches(a.substr(best_i + best_k), b.substr(best_j + best_k));
}

inline std::u32string ascii32(const std::string& s) { return {s.begin(), s.end()}; }

inline double gestalt_ratio(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  if (a.empty() && b.empty()) return 1.0;
  return 2.0 * static_cast<double>(gestalt_matches(ascii32(a), ascii32(b))) /
         static_cast<double>(a.size() + b.size());
}

// Every n-gram listed explicitly, overlap counted by repeated removal.
inline std::size_t ngram_overlap(const std::vector<std::string>& c, const std::vector<std::string>& r,
                                 std::size_t n) {
  std::vector<std::vector<std::string>> pool;
  for (std::size_t i = 0; i + n <= r.size(); ++i)
    pool.emplace_back(r.begin() + static_cast<long>(i), r.begin() + static_cast<long>(i + n));
  std::size_t hits = 0;
  for (std::size_t i = 0; i + n <= c.size(); ++i) {
    std::vector<std::string> g(c.begin() + static_cast<long>(i), c.begin() + static_cast<long>(i + n));
    auto it = std::find(pool.begin(), pool.end(), g);
    if (it != pool.end()) {
      pool.erase(it);
      ++hits;
    }
  }
  return hits;
}

inline std::size_t ngram_total(const std::vector<std::string>& s, std::size_t n) {
  return s.size() >= n ? s.size() - n + 1 : 0;
}

// Full-table LCS.
inline std::size_t lcs_oracle(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
  return t[a.size()][b.size()];
}

// P, R, F on the [0, 100] scale from overlap and totals.
struct Oracle3 {
  double p, r, f;
};
inline Oracle3 prf_scores(std::size_t hits, std::size_t cand, std::size_t ref) {
  const double p = cand ? 100.0 * static_cast<double>(hits) / static_cast<double>(cand) : 0.0;
  const double r = ref ? 100.0 * static_cast<double>(hits) / static_cast<double>(ref) : 0.0;
  return {p, r, p + r > 0 ? 2 * p * r / (p + r) : 0.0};
}

inline double set_iou(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (auto x : a) inter += b.count(x);
  return static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

inline std::set<std::size_t> covered(const std::vector<Span>& spans) {
  std::set<std::size_t> out;
  for (const auto& s : spans)
    for (auto t = s.token_start; t < s.token_end; ++t) out.insert(t);
  return out;
}

// Token range of the first occurrence of `phrase` (compared token by token).
inline Span find_phrase(const Document& doc, const std::vector<std::string>& phrase) {
  for (std::size_t i = 0; i + phrase.size() <= doc.tokens.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < phrase.size() && ok; ++k) ok = doc.tokens[i + k].surface == phrase[k];
    if (ok) return Span{doc.id, i, i + phrase.size()};
  }
  throw std::runtime_error("phrase not found");
}

inline Corpus fixture_corpus() {
  return ingest(data_dir() / "pairs.jsonl", IngestFormat::kPairLines);
}

inline void align(DocumentSummaryPair& p, std::vector<std::pair<std::size_t, std::size_t>> sum,
                  std::vector<std::pair<std::size_t, std::size_t>> doc) {
  Alignment a;
  for (auto [b, e] : sum) a.summary_spans.push_back({p.summary.id, b, e});
  for (auto [b, e] : doc) a.document_spans.push_back({p.document.id, b, e});
  a.annotator_id = "fixture";
  p.alignments.push_back(std::move(a));
}

// Three documents with two summaries each. Token and sentence counts:
//   A "Storms hit the coast. Boats sank. Roads closed."    11 tokens, 3 sentences
//   B "The library opened. Children read books."             8 tokens, 2 sentences
//   C "Prices rose sharply in May."                          6 tokens, 1 sentence
//   A1 "Storms hit. Boats sank."  6/2    A2 "Storms sank boats."  4/1
//   B1 "The library opened."      4/1    B2 "Children read."      3/1
//   C1 "Prices rose."             3/1    C2 "Prices rose in May." 5/1
// Six summary sentences carry alignments (C2 has none); only A2's reaches
// two document sentences.
inline Corpus stats_fixture(bool with_multi = true) {
  const std::string a = "Storms hit the coast. Boats sank. Roads closed.";
  const std::string b = "The library opened. Children read books.";
  const std::string c = "Prices rose sharply in May.";
  Corpus out;
  auto add = [&](const std::string& doc, const std::string& sum) -> DocumentSummaryPair& {
    out.pairs.push_back(ctr::make_pair(doc, sum));
    return out.pairs.back();
  };
  align(add(a, "Storms hit. Boats sank."), {{0, 2}}, {{0, 2}});
  align(out.pairs.back(), {{3, 5}}, {{5, 7}});
  if (with_multi)
    align(add(a, "Storms sank boats."), {{0, 4}}, {{0, 1}, {5, 7}});
  else
    align(add(a, "Storms sank boats."), {{0, 4}}, {{5, 7}});
  align(add(b, "The library opened."), {{0, 3}}, {{0, 3}});
  align(add(b, "Children read."), {{0, 2}}, {{4, 6}});
  align(add(c, "Prices rose."), {{0, 2}}, {{0, 2}});
  add(c, "Prices rose in May.");
  return out;
}

// ---- Generators --------------------------------------------------------------

inline std::size_t uniform(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline std::vector<std::string> random_words(std::mt19937& rng, std::size_t n,
                                             std::size_t vocab) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(uniform(rng, 0, vocab - 1)));
  return out;
}

// Random (possibly overlapping, unsorted) spans inside [0, n).
inline std::vector<Span> random_spans(std::mt19937& rng, const std::string& text_id, std::size_t n,
                                      std::size_t max_spans) {
  std::vector<Span> out;
  if (n == 0) return out;
  const std::size_t k = uniform(rng, 0, max_spans);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t b = uniform(rng, 0, n - 1);
    const std::size_t e = uniform(rng, b + 1, std::min(n, b + 1 + uniform(rng, 0, 8)));
    out.push_back(Span{text_id, b, e});
  }
  return out;
}

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words = {
      "the", "prize", "was", "awarded", "in", "1969", "novel", "writers", "of", "a",
      "winner", "receives", "pounds", "storm", "flooded", "harbor", "boats", "sank", "city",
      "closed", "road", "mayor", "said", "repairs", "would", "take", "months", "library",
      "opened", "room", "books", "children", "borrow", "and", "is", "given", "best", "English",
      "Dr.", "U.S.", "don't", "3.5", "1,000", "rise", "sales", "it", "they", "were"};
  return words;
}

// Plain-text document of several sentences with mixed punctuation.
inline std::string random_text(std::mt19937& rng, std::size_t sentences) {
  const auto& v = vocabulary();
  std::string out;
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t len = uniform(rng, 1, 14);
    for (std::size_t i = 0; i < len; ++i) {
      std::string w = v[uniform(rng, 0, v.size() - 1)];
      if (i == 0 && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
      if (!out.empty() && out.back() != '\n') out += ' ';
      out += w;
      if (i + 1 < len && uniform(rng, 0, 9) == 0) out += ',';
    }
    out += uniform(rng, 0, 5) == 0 ? "!" : ".";
    if (uniform(rng, 0, 6) == 0) out += "\n\n";
  }
  return out;
}

}  // namespace ctr::test

#endif  // CTR_TESTS_SUPPORT_HPP_
