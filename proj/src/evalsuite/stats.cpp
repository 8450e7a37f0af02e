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
#include <set>
#include <unordered_set>

#include "ctr/evalsuite.hpp"

namespace ctr::eval {

StatsReport dataset_stats(const Corpus& corpus) {
  StatsReport r;
  r.pair_count = corpus.pairs.size();
  if (r.pair_count == 0) return r;

  std::unordered_set<std::string> docs;
  double in_tokens = 0, out_tokens = 0, in_sentences = 0, out_sentences = 0;
  for (const auto& pair : corpus.pairs) {
    docs.insert(pair.document.id);
    in_tokens += static_cast<double>(pair.document.tokens.size());
    out_tokens += static_cast<double>(pair.summary.tokens.size());
    in_sentences += static_cast<double>(pair.document.sentences.size());
    out_sentences += static_cast<double>(pair.summary.sentences.size());
    r.max_input_tokens = std::max(r.max_input_tokens, pair.document.tokens.size());
    r.max_output_tokens = std::max(r.max_output_tokens, pair.summary.tokens.size());

    // Document sentences touched by the alignments of each summary sentence.
    std::vector<std::set<std::size_t>> touched(pair.summary.sentences.size());
    std::vector<bool> aligned(pair.summary.sentences.size(), false);
    for (const Alignment& a : pair.alignments) {
      std::set<std::size_t> doc_sentences;
      for (const Span& s : a.document_spans)
        for (std::size_t t = s.token_start; t < s.token_end; ++t)
          doc_sentences.insert(pair.document.sentence_of(t));
      std::set<std::size_t> summary_sentences;
      for (const Span& s : a.summary_spans)
        for (std::size_t t = s.token_start; t < s.token_end; ++t)
          summary_sentences.insert(pair.summary.sentence_of(t));
      for (std::size_t s : summary_sentences) {
        aligned[s] = true;
        touched[s].insert(doc_sentences.begin(), doc_sentences.end());
      }
    }
    for (std::size_t s = 0; s < touched.size(); ++s) {
      if (!aligned[s]) continue;
      ++r.aligned_summary_sentences;
      if (touched[s].size() >= 2) ++r.multi_sentence_alignments;
    }
  }
  const auto n = static_cast<double>(r.pair_count);
  r.unique_docs = docs.size();
  r.mean_summaries_per_doc = n / static_cast<double>(r.unique_docs);
  r.mean_input_tokens = in_tokens / n;
  r.mean_output_tokens = out_tokens / n;
  r.mean_input_sentences = in_sentences / n;
  r.mean_output_sentences = out_sentences / n;
  if (r.aligned_summary_sentences > 0)
    r.pct_multi_sentence_alignments = 100.0 * static_cast<double>(r.multi_sentence_alignments) /
                                      static_cast<double>(r.aligned_summary_sentences);
  return r;
}

}  // namespace ctr::eval
