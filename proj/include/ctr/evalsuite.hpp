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

#ifndef CTR_EVALSUITE_HPP_
#define CTR_EVALSUITE_HPP_

// Agreement and quality metrics. Percent-scale values lie in [0, 100]; IoU
// values lie in [0, 1]. A metric whose denominator is empty reports 0 and
// sets a diagnostic instead of dropping the instance.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctr/corpus.hpp"
#include "ctr/textproc.hpp"

namespace ctr::eval {

// ---- IoU agreement --------------------------------------------------------

// Document highlights split by the summary sentence their alignment covers.
// An alignment whose summary spans touch several sentences counts for each.
struct SentenceHighlights {
  std::string pair_id;
  std::vector<HighlightSet> per_sentence;
};

SentenceHighlights group_by_summary_sentence(const DocumentSummaryPair& pair);

struct SentenceIou {
  std::size_t summary_sentence_index = 0;
  double iou = 0.0;
};

struct IouReport {
  std::string pair_id;
  std::vector<SentenceIou> per_sentence;
  // Arithmetic mean of per_sentence (0 when there are no sentences).
  double mean_iou = 0.0;
};

// |A_s & B_s| / |A_s | B_s| per summary sentence over document token indices,
// restricted to content tokens when restrict_content is set. Two empty sets
// agree perfectly (IoU 1). Throws ValidationError on mismatched pair ids or
// sentence counts.
IouReport token_iou(const SentenceHighlights& a, const SentenceHighlights& b,
                    const Document& document, bool restrict_content = true);
IouReport token_iou(const DocumentSummaryPair& a, const DocumentSummaryPair& b,
                    bool restrict_content = true);

struct CorpusIouReport {
  std::vector<IouReport> per_pair;
  // Headline number: mean over every summary sentence of every shared pair.
  double sentence_mean = 0.0;
  // Mean of the per-pair means.
  double pair_mean = 0.0;
  std::vector<std::string> diagnostics;
};

// Pairs are matched by id; ids present on one side only are reported in
// diagnostics and skipped.
CorpusIouReport corpus_iou(const Corpus& a, const Corpus& b, bool restrict_content = true,
                           bool parallel = true);

// ---- Highlight precision / recall / F1 ------------------------------------

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct PairPrf {
  std::string pair_id;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  Prf scores;
  bool gold_empty = false;
};

struct PrfReport {
  // Mean over pairs with non-empty gold, of per-pair P, R and F1.
  Prf macro;
  // From confusion counts pooled over all pairs.
  Prf micro;
  std::vector<PairPrf> per_pair;
  std::vector<std::string> diagnostics;
};

// P/R/F1 from raw counts, in percent. F1 is 0 when P + R is 0.
Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

// Token-wise comparison of each pair's full highlight set (content tokens
// only). Gold pairs missing from `predicted` count as empty predictions.
PrfReport highlight_prf(const Corpus& predicted, const Corpus& gold, bool parallel = true);

// ---- ROUGE -----------------------------------------------------------------

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
  std::size_t matched = 0;
  std::size_t candidate_total = 0;
  std::size_t reference_total = 0;
  // A denominator was empty; affected values were reported as 0.
  bool degenerate = false;
};

// Lowercased lemmas of the text's tokens, dropping tokens with no letter or
// digit. Stopwords are kept.
std::vector<std::string> normalize_for_rouge(std::string_view text,
                                             const textproc::Lexicon& lexicon =
                                                 textproc::Lexicon::builtin());

// Clipped n-gram overlap: matched = sum over n-grams g of min(count_c(g),
// count_r(g)); R = matched / reference n-grams, P = matched / candidate
// n-grams, F = 2PR / (P + R). Throws ValidationError unless n is 1 or 2.
RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   std::size_t n);

// LCS over whole token sequences.
RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

struct RougeReport {
  RougeScore r1, r2, rl;
  std::vector<std::string> diagnostics;
};

RougeReport rouge_report(std::span<const std::string> candidate,
                         std::span<const std::string> reference);

// ROUGE of `generated` against the concatenated highlights of `document`.
// Throws ValidationError when the highlight set is empty.
RougeReport content_preservation(std::string_view generated, const Document& document,
                                 const HighlightSet& highlights);

enum class RougeReference { kHighlights, kSummary };

struct CorpusRougeReport {
  std::vector<std::pair<std::string, RougeReport>> per_pair;
  // Mean of per-pair scores.
  RougeReport mean;
  std::vector<std::string> diagnostics;
};

// predictions maps pair id -> generated text; every prediction must name a
// pair of the corpus.
CorpusRougeReport corpus_rouge(const Corpus& corpus,
                               std::span<const std::pair<std::string, std::string>> predictions,
                               RougeReference reference, bool parallel = true);

// ---- Dataset statistics ----------------------------------------------------

struct StatsReport {
  std::size_t unique_docs = 0;
  std::size_t pair_count = 0;
  double mean_summaries_per_doc = 0.0;
  double mean_input_tokens = 0.0;
  double mean_output_tokens = 0.0;
  std::size_t max_input_tokens = 0;
  std::size_t max_output_tokens = 0;
  double mean_input_sentences = 0.0;
  double mean_output_sentences = 0.0;
  // Summary sentences with at least one alignment, and those among them whose
  // aligned document spans touch two or more document sentences.
  std::size_t aligned_summary_sentences = 0;
  std::size_t multi_sentence_alignments = 0;
  double pct_multi_sentence_alignments = 0.0;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

// Input = document, output = summary, averaged over pairs. Unique documents
// are counted by document id.
StatsReport dataset_stats(const Corpus& corpus);

// ---- Report rendering --------------------------------------------------------

nlohmann::json to_json(const Prf& p);
nlohmann::json to_json(const RougeScore& r);
nlohmann::json to_json(const RougeReport& r);
nlohmann::json to_json(const IouReport& r);
nlohmann::json to_json(const StatsReport& r);

// Values rounded to two decimals for display.
double round2(double v);

// One JSON object per line: a record per pair, then {"aggregate": ...}.
std::string iou_records(const CorpusIouReport& r);
std::string prf_records(const PrfReport& r);
std::string rouge_records(const CorpusRougeReport& r);

std::string stats_table(const StatsReport& r, std::string_view row_label = "corpus");
std::string iou_table(const CorpusIouReport& r);
std::string prf_table(const PrfReport& r);
std::string rouge_table(const CorpusRougeReport& r);

}  // namespace ctr::eval

#endif  // CTR_EVALSUITE_HPP_
