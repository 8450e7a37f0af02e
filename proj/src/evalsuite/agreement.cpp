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
#include <iterator>
#include <map>
#include <set>

#include "ctr/error.hpp"
#include "ctr/evalsuite.hpp"
#include "ctr/kernels.hpp"

namespace ctr::eval {

namespace {

std::vector<std::size_t> token_set(const HighlightSet& h, const Document& doc,
                                   bool restrict_content) {
  std::vector<std::size_t> out;
  for (std::size_t t : h.token_indices()) {
    if (t >= doc.tokens.size())
      throw ValidationError("highlight token " + std::to_string(t) + " outside document '" +
                            doc.id + "'");
    if (!restrict_content || doc.tokens[t].is_content) out.push_back(t);
  }
  return out;
}

std::size_t intersection_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

std::vector<std::size_t> pair_tokens(const DocumentSummaryPair& pair) {
  if (pair.alignments.empty()) return {};
  return token_set(highlights_of(pair), pair.document, true);
}

}  // namespace

SentenceHighlights group_by_summary_sentence(const DocumentSummaryPair& pair) {
  const std::size_t count = pair.summary.sentences.size();
  std::vector<std::vector<Span>> spans(count);
  for (const Alignment& a : pair.alignments) {
    std::set<std::size_t> sentences;
    for (const Span& s : a.summary_spans)
      for (std::size_t t = s.token_start; t < s.token_end; ++t)
        sentences.insert(pair.summary.sentence_of(t));
    for (std::size_t s : sentences)
      if (s < count) spans[s].insert(spans[s].end(), a.document_spans.begin(), a.document_spans.end());
  }
  SentenceHighlights out{pair.id, {}};
  out.per_sentence.reserve(count);
  for (auto& s : spans) out.per_sentence.push_back(HighlightSet::canonical(pair.id, s));
  return out;
}

IouReport token_iou(const SentenceHighlights& a, const SentenceHighlights& b,
                    const Document& document, bool restrict_content) {
  if (a.pair_id != b.pair_id)
    throw ValidationError("cannot compare highlights of different pairs '" + a.pair_id +
                          "' and '" + b.pair_id + "'");
  if (a.per_sentence.size() != b.per_sentence.size())
    throw ValidationError("pair '" + a.pair_id + "': summary sentence counts differ");
  IouReport report{a.pair_id, {}, 0.0};
  double sum = 0.0;
  for (std::size_t s = 0; s < a.per_sentence.size(); ++s) {
    const auto x = token_set(a.per_sentence[s], document, restrict_content);
    const auto y = token_set(b.per_sentence[s], document, restrict_content);
    const std::size_t inter = intersection_size(x, y);
    const std::size_t uni = x.size() + y.size() - inter;
    const double iou = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
    report.per_sentence.push_back({s, iou});
    sum += iou;
  }
  if (!report.per_sentence.empty())
    report.mean_iou = sum / static_cast<double>(report.per_sentence.size());
  return report;
}

IouReport token_iou(const DocumentSummaryPair& a, const DocumentSummaryPair& b,
                    bool restrict_content) {
  if (a.id != b.id)
    throw ValidationError("cannot compare highlights of different pairs '" + a.id + "' and '" +
                          b.id + "'");
  if (a.document.id != b.document.id || a.summary.id != b.summary.id)
    throw ValidationError("pair '" + a.id + "': texts differ between the two annotations");
  return token_iou(group_by_summary_sentence(a), group_by_summary_sentence(b), a.document,
                   restrict_content);
}

CorpusIouReport corpus_iou(const Corpus& a, const Corpus& b, bool restrict_content,
                           bool parallel) {
  CorpusIouReport report;
  std::vector<std::pair<const DocumentSummaryPair*, const DocumentSummaryPair*>> shared;
  for (const auto& pa : a.pairs) {
    if (const auto* pb = b.find(pa.id))
      shared.emplace_back(&pa, pb);
    else
      report.diagnostics.push_back("pair '" + pa.id + "' missing from second annotation");
  }
  for (const auto& pb : b.pairs)
    if (!a.find(pb.id)) report.diagnostics.push_back("pair '" + pb.id + "' missing from first annotation");

  report.per_pair = kernels::ordered_map<IouReport>(
      shared.size(),
      [&](std::size_t k) { return token_iou(*shared[k].first, *shared[k].second, restrict_content); },
      parallel);

  double sentence_sum = 0.0;
  std::size_t sentence_count = 0;
  double pair_sum = 0.0;
  for (const auto& r : report.per_pair) {
    for (const auto& s : r.per_sentence) sentence_sum += s.iou;
    sentence_count += r.per_sentence.size();
    pair_sum += r.mean_iou;
  }
  if (sentence_count > 0) report.sentence_mean = sentence_sum / static_cast<double>(sentence_count);
  if (!report.per_pair.empty())
    report.pair_mean = pair_sum / static_cast<double>(report.per_pair.size());
  return report;
}

Prf prf_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Prf p;
  if (tp + fp > 0) p.precision = 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) p.recall = 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (p.precision + p.recall > 0.0)
    p.f1 = 2.0 * p.precision * p.recall / (p.precision + p.recall);
  return p;
}

PrfReport highlight_prf(const Corpus& predicted, const Corpus& gold, bool parallel) {
  PrfReport report;
  for (const auto& p : predicted.pairs)
    if (!gold.find(p.id)) report.diagnostics.push_back("predicted pair '" + p.id + "' has no gold; ignored");

  report.per_pair = kernels::ordered_map<PairPrf>(
      gold.pairs.size(),
      [&](std::size_t k) {
        const DocumentSummaryPair& g = gold.pairs[k];
        const DocumentSummaryPair* p = predicted.find(g.id);
        if (p && (p->document.id != g.document.id))
          throw ValidationError("pair '" + g.id + "': predicted and gold documents differ");
        const auto gold_tokens = pair_tokens(g);
        const auto pred_tokens = p ? pair_tokens(*p) : std::vector<std::size_t>{};
        const std::size_t tp = intersection_size(gold_tokens, pred_tokens);
        PairPrf r;
        r.pair_id = g.id;
        r.true_positives = tp;
        r.false_positives = pred_tokens.size() - tp;
        r.false_negatives = gold_tokens.size() - tp;
        r.scores = prf_from_counts(tp, r.false_positives, r.false_negatives);
        r.gold_empty = gold_tokens.empty();
        return r;
      },
      parallel);

  std::size_t tp = 0, fp = 0, fn = 0, included = 0;
  Prf sum;
  for (const auto& r : report.per_pair) {
    tp += r.true_positives;
    fp += r.false_positives;
    fn += r.false_negatives;
    if (!gold.find(r.pair_id) || !predicted.find(r.pair_id))
      report.diagnostics.push_back("pair '" + r.pair_id + "' has no prediction; scored as empty");
    if (r.gold_empty) {
      report.diagnostics.push_back("pair '" + r.pair_id + "' has empty gold; excluded from macro");
      continue;
    }
    if (r.true_positives + r.false_positives == 0)
      report.diagnostics.push_back("pair '" + r.pair_id + "' has empty prediction; precision 0");
    ++included;
    sum.precision += r.scores.precision;
    sum.recall += r.scores.recall;
    sum.f1 += r.scores.f1;
  }
  if (included > 0) {
    const auto n = static_cast<double>(included);
    report.macro = {sum.precision / n, sum.recall / n, sum.f1 / n};
  }
  report.micro = prf_from_counts(tp, fp, fn);
  return report;
}

}  // namespace ctr::eval
