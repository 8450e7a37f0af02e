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

#ifndef CTR_SILVERALIGN_HPP_
#define CTR_SILVERALIGN_HPP_

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctr/corpus.hpp"
#include "ctr/textproc.hpp"

namespace ctr::silveralign {

inline constexpr double kDefaultAlignThreshold = 0.5;

// One predicate-argument unit inside a sentence; spans may be discontinuous
// (a clause that borrows the subject of the main clause).
struct PropositionSpan {
  std::size_t sentence_index = 0;
  std::vector<Span> spans;
  std::size_t head_token = 0;

  friend bool operator==(const PropositionSpan&, const PropositionSpan&) = default;
};

struct AlignmentCandidate {
  PropositionSpan summary_prop;
  PropositionSpan doc_prop;
  double score = 0.0;

  friend bool operator==(const AlignmentCandidate&, const AlignmentCandidate&) = default;
};

// Clause-level splitting of one sentence of `text`. Boundaries are commas,
// semicolons, colons, brackets and dashes, coordinating and subordinating
// conjunctions, and the relative pronouns who/whom/whose/which. A clause that
// opens with a verb shares the subject of the sentence's first clause; a
// comma-delimited verbless phrase after the subject is an apposition and
// forms its own proposition with that subject. Every content token of the
// sentence lands in at least one proposition.
std::vector<PropositionSpan> extract_propositions(const Document& text, std::size_t sentence);

// All propositions of all sentences, in sentence order.
std::vector<PropositionSpan> extract_all(const Document& text);

// Token indices covered by a proposition, ascending.
std::vector<std::size_t> tokens_of(const PropositionSpan& prop);

// Fraction of the summary proposition's content tokens that have a match
// (matrix(i, j) set) among the document proposition's tokens. Zero when the
// summary proposition has no content token.
double score_alignment(const Document& summary, const PropositionSpan& summary_prop,
                       const PropositionSpan& doc_prop, const textproc::RelationMatrix& matrix);

// Source of scored candidates for a pair.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual std::vector<AlignmentCandidate> candidates(const DocumentSummaryPair& pair) const = 0;
};

// Every summary proposition against every document proposition, scored with
// score_alignment. Scores are coverage ratios, not calibrated probabilities.
class LexicalBackend : public Backend {
 public:
  explicit LexicalBackend(double lemma_threshold = textproc::kDefaultLemmaThreshold);
  std::string name() const override { return "silver:lexical"; }
  std::vector<AlignmentCandidate> candidates(const DocumentSummaryPair& pair) const override;

 private:
  double lemma_threshold_;
};

struct ExternalConfig {
  // http://host:port/path
  std::string endpoint;
  std::chrono::milliseconds timeout{30000};
  int retries = 3;
  std::chrono::milliseconds backoff{200};
};

// POST {document_text, summary_text, doc_token_offsets, summary_token_offsets}
nlohmann::json external_request(const DocumentSummaryPair& pair);

// Validates {candidates: [{summary_spans, doc_spans, score}]} against the
// pair's token counts. Throws ValidationError naming the offending candidate.
std::vector<AlignmentCandidate> parse_external_response(const nlohmann::json& response,
                                                        const DocumentSummaryPair& pair);

// One request per call, retried on timeouts, connection failures and 5xx up
// to config.retries times. Throws ServiceError once attempts run out.
std::vector<AlignmentCandidate> external_align(const DocumentSummaryPair& pair,
                                               const ExternalConfig& config);

class ExternalBackend : public Backend {
 public:
  explicit ExternalBackend(ExternalConfig config) : config_(std::move(config)) {}
  std::string name() const override { return "silver:external"; }
  std::vector<AlignmentCandidate> candidates(const DocumentSummaryPair& pair) const override {
    return external_align(pair, config_);
  }

 private:
  ExternalConfig config_;
};

struct AlignResult {
  std::vector<Alignment> alignments;
  // No summary proposition cleared the threshold.
  bool uncovered = false;
};

// Per summary proposition, the document propositions scoring >= threshold
// become one Alignment whose document spans are their canonical union and
// whose score is the best matched score. Throws ValidationError when the
// threshold is outside [0, 1].
AlignResult align_pair(const DocumentSummaryPair& pair, const Backend& backend,
                       double threshold = kDefaultAlignThreshold);

// align_pair over every pair (in parallel, results kept in corpus order).
// Existing alignments are replaced, provenance becomes silver and uncovered
// pairs get the "uncovered" flag.
Corpus align_corpus(const Corpus& corpus, const Backend& backend,
                    double threshold = kDefaultAlignThreshold, bool parallel = true);

}  // namespace ctr::silveralign

#endif  // CTR_SILVERALIGN_HPP_
