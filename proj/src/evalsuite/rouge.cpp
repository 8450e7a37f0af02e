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

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ctr/error.hpp"
#include "ctr/evalsuite.hpp"
#include "ctr/kernels.hpp"
#include "ctr/modelio.hpp"

namespace ctr::eval {

namespace {

void finish(RougeScore& s) {
  if (s.candidate_total > 0)
    s.precision = 100.0 * static_cast<double>(s.matched) / static_cast<double>(s.candidate_total);
  if (s.reference_total > 0)
    s.recall = 100.0 * static_cast<double>(s.matched) / static_cast<double>(s.reference_total);
  if (s.precision + s.recall > 0.0) s.f = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  s.degenerate = s.candidate_total == 0 || s.reference_total == 0;
}

using Gram = std::vector<std::string_view>;

std::map<Gram, std::size_t> count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  std::map<Gram, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    Gram g(tokens.begin() + static_cast<std::ptrdiff_t>(i),
           tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    ++counts[g];
  }
  return counts;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::vector<std::string> normalize_for_rouge(std::string_view text,
                                             const textproc::Lexicon& lexicon) {
  std::vector<Token> tokens = textproc::tokenize(textproc::clean_text(text), lexicon);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (!textproc::has_word_char(t.surface)) continue;
    out.push_back(textproc::lemmatize(t.surface, lexicon));
  }
  return out;
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n) {
  if (n != 1 && n != 2) throw ValidationError("rouge_n supports n = 1 or 2, got " + std::to_string(n));
  RougeScore s;
  const auto c = count_ngrams(candidate, n);
  const auto r = count_ngrams(reference, n);
  s.candidate_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
  s.reference_total = reference.size() >= n ? reference.size() - n + 1 : 0;
  for (const auto& [gram, count] : c) {
    auto it = r.find(gram);
    if (it != r.end()) s.matched += std::min(count, it->second);
  }
  finish(s);
  return s;
}

RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  RougeScore s;
  s.candidate_total = candidate.size();
  s.reference_total = reference.size();
  s.matched = lcs_length(candidate, reference);
  finish(s);
  return s;
}

RougeReport rouge_report(std::span<const std::string> candidate,
                         std::span<const std::string> reference) {
  RougeReport r{rouge_n(candidate, reference, 1), rouge_n(candidate, reference, 2),
                rouge_l(candidate, reference), {}};
  if (candidate.empty()) r.diagnostics.emplace_back("empty candidate");
  if (reference.empty()) r.diagnostics.emplace_back("empty reference");
  if (r.r2.degenerate && !candidate.empty() && !reference.empty())
    r.diagnostics.emplace_back("sequence shorter than 2 tokens; ROUGE-2 reported as 0");
  return r;
}

RougeReport content_preservation(std::string_view generated, const Document& document,
                                 const HighlightSet& highlights) {
  if (highlights.spans.empty())
    throw ValidationError("content preservation needs a non-empty highlight set");
  const std::string reference = modelio::concat_text(document, highlights);
  return rouge_report(normalize_for_rouge(generated), normalize_for_rouge(reference));
}

CorpusRougeReport corpus_rouge(const Corpus& corpus,
                               std::span<const std::pair<std::string, std::string>> predictions,
                               RougeReference reference, bool parallel) {
  CorpusRougeReport report;
  std::vector<const DocumentSummaryPair*> pairs;
  for (const auto& [id, text] : predictions) {
    const auto* p = corpus.find(id);
    if (!p) throw ValidationError("prediction names unknown pair '" + id + "'");
    pairs.push_back(p);
  }
  auto reports = kernels::ordered_map<RougeReport>(
      predictions.size(),
      [&](std::size_t k) {
        const std::string& text = predictions[k].second;
        if (reference == RougeReference::kSummary)
          return rouge_report(normalize_for_rouge(text), normalize_for_rouge(pairs[k]->summary.raw_text));
        return content_preservation(text, pairs[k]->document, highlights_of(*pairs[k]));
      },
      parallel);

  RougeReport& mean = report.mean;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    for (const auto& d : reports[k].diagnostics)
      report.diagnostics.push_back("pair '" + predictions[k].first + "': " + d);
    for (auto [dst, src] : {std::pair{&mean.r1, &reports[k].r1}, std::pair{&mean.r2, &reports[k].r2},
                            std::pair{&mean.rl, &reports[k].rl}}) {
      dst->precision += src->precision;
      dst->recall += src->recall;
      dst->f += src->f;
      dst->matched += src->matched;
      dst->candidate_total += src->candidate_total;
      dst->reference_total += src->reference_total;
      dst->degenerate = dst->degenerate || src->degenerate;
    }
    report.per_pair.emplace_back(predictions[k].first, std::move(reports[k]));
  }
  if (!report.per_pair.empty()) {
    const auto n = static_cast<double>(report.per_pair.size());
    for (RougeScore* s : {&mean.r1, &mean.r2, &mean.rl}) {
      s->precision /= n;
      s->recall /= n;
      s->f /= n;
    }
  }
  return report;
}

}  // namespace ctr::eval
