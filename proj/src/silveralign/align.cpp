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
#include <string>

#include "ctr/error.hpp"
#include "ctr/kernels.hpp"
#include "ctr/silveralign.hpp"

namespace ctr::silveralign {

double score_alignment(const Document& summary, const PropositionSpan& summary_prop,
                       const PropositionSpan& doc_prop, const textproc::RelationMatrix& matrix) {
  const std::vector<std::size_t> doc_tokens = tokens_of(doc_prop);
  std::size_t content = 0;
  std::size_t matched = 0;
  for (std::size_t i : tokens_of(summary_prop)) {
    if (i >= summary.tokens.size() || i >= matrix.rows())
      throw ValidationError("summary proposition token " + std::to_string(i) + " out of range");
    if (!summary.tokens[i].is_content) continue;
    ++content;
    const bool hit = std::any_of(doc_tokens.begin(), doc_tokens.end(), [&](std::size_t j) {
      if (j >= matrix.cols())
        throw ValidationError("document proposition token " + std::to_string(j) + " out of range");
      return matrix.at(i, j);
    });
    if (hit) ++matched;
  }
  return content == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(content);
}

LexicalBackend::LexicalBackend(double lemma_threshold) : lemma_threshold_(lemma_threshold) {
  if (!(lemma_threshold >= 0.0 && lemma_threshold <= 1.0))
    throw ValidationError("lemma threshold must lie in [0, 1]");
}

std::vector<AlignmentCandidate> LexicalBackend::candidates(const DocumentSummaryPair& pair) const {
  const auto matrix =
      textproc::relation_matrix(pair.summary.tokens, pair.document.tokens, lemma_threshold_);
  const auto summary_props = extract_all(pair.summary);
  const auto doc_props = extract_all(pair.document);
  std::vector<AlignmentCandidate> out;
  out.reserve(summary_props.size() * doc_props.size());
  for (const auto& sp : summary_props)
    for (const auto& dp : doc_props)
      out.push_back({sp, dp, score_alignment(pair.summary, sp, dp, matrix)});
  return out;
}

AlignResult align_pair(const DocumentSummaryPair& pair, const Backend& backend, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw ValidationError("alignment threshold must lie in [0, 1], got " + std::to_string(threshold));
  const std::vector<AlignmentCandidate> candidates = backend.candidates(pair);

  // Group by summary fact, in order of first appearance.
  std::vector<std::vector<Span>> order;
  std::map<std::vector<Span>, std::pair<std::vector<Span>, double>> groups;
  for (const auto& c : candidates) {
    if (c.score < threshold) continue;
    auto [it, inserted] = groups.try_emplace(c.summary_prop.spans);
    if (inserted) {
      order.push_back(c.summary_prop.spans);
      it->second.second = c.score;
    }
    auto& [doc_spans, best] = it->second;
    doc_spans.insert(doc_spans.end(), c.doc_prop.spans.begin(), c.doc_prop.spans.end());
    best = std::max(best, c.score);
  }

  AlignResult result;
  for (const auto& key : order) {
    const auto& [doc_spans, best] = groups.at(key);
    Alignment a;
    a.summary_spans = key;
    a.document_spans = canonicalize(doc_spans);
    a.annotator_id = backend.name();
    a.score = best;
    result.alignments.push_back(std::move(a));
  }
  result.uncovered = result.alignments.empty();
  return result;
}

Corpus align_corpus(const Corpus& corpus, const Backend& backend, double threshold,
                    bool parallel) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw ValidationError("alignment threshold must lie in [0, 1], got " + std::to_string(threshold));
  const auto results = kernels::ordered_map<AlignResult>(
      corpus.pairs.size(),
      [&](std::size_t k) { return align_pair(corpus.pairs[k], backend, threshold); }, parallel);
  Corpus out = corpus;
  for (std::size_t k = 0; k < out.pairs.size(); ++k) {
    auto& pair = out.pairs[k];
    pair.alignments = results[k].alignments;
    pair.provenance = Provenance::kSilver;
    std::erase(pair.flags, std::string("uncovered"));
    if (results[k].uncovered) pair.flags.emplace_back("uncovered");
  }
  return out;
}

}  // namespace ctr::silveralign
