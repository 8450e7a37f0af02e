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

#include <gtest/gtest.h>

#include "ctr/error.hpp"
#include "ctr/evalsuite.hpp"
#include "ctr/modelio.hpp"
#include "ctr/textproc.hpp"
#include "support.hpp"

namespace ctr::eval {
namespace {

using Seq = std::vector<std::string>;

Seq split(const std::string& s) {
  Seq out;
  std::istringstream in(s);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// A pair whose document tokens are all content words.
DocumentSummaryPair content_pair() {
  return ctr::make_pair("alpha beta gamma delta epsilon zeta eta theta", "Alpha beta gamma.", "p");
}

DocumentSummaryPair with_highlights(DocumentSummaryPair p, std::set<std::size_t> tokens) {
  p.alignments.clear();
  if (tokens.empty()) return p;
  Alignment a;
  a.summary_spans.push_back({p.summary.id, 0, 1});
  for (auto t : tokens) a.document_spans.push_back({p.document.id, t, t + 1});
  p.alignments.push_back(std::move(a));
  return p;
}

TEST(Iou, Examples) {
  const auto base = content_pair();
  const auto a = with_highlights(base, {1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(token_iou(a, a).mean_iou, 1.0);
  EXPECT_DOUBLE_EQ(token_iou(a, with_highlights(base, {3, 4, 5})).mean_iou, 0.4);
  EXPECT_DOUBLE_EQ(token_iou(a, with_highlights(base, {0, 6})).mean_iou, 0.0);
  EXPECT_DOUBLE_EQ(token_iou(with_highlights(base, {}), with_highlights(base, {})).mean_iou, 1.0);
}

TEST(Iou, RestrictsToContentTokens) {
  auto p = ctr::make_pair("the cat and the dog", "Cat.", "p");
  // {the, cat} vs {cat, and}: content sets are both {cat}.
  const auto a = with_highlights(p, {0, 1});
  const auto b = with_highlights(p, {1, 2});
  EXPECT_DOUBLE_EQ(token_iou(a, b).mean_iou, 1.0);
  EXPECT_DOUBLE_EQ(token_iou(a, b, false).mean_iou, 1.0 / 3.0);
}

TEST(Iou, PerSummarySentence) {
  auto p = ctr::make_pair("alpha beta gamma delta", "Alpha. Beta.", "p");
  auto a = p, b = p;
  test::align(a, {{0, 1}}, {{0, 2}});
  test::align(a, {{2, 3}}, {{2, 3}});
  test::align(b, {{0, 1}}, {{0, 2}});
  const auto r = token_iou(a, b);
  ASSERT_EQ(r.per_sentence.size(), 2u);
  EXPECT_DOUBLE_EQ(r.per_sentence[0].iou, 1.0);
  EXPECT_DOUBLE_EQ(r.per_sentence[1].iou, 0.0);
  EXPECT_DOUBLE_EQ(r.mean_iou, 0.5);
}

TEST(Iou, MismatchedPairsRejected) {
  auto a = content_pair();
  auto b = content_pair();
  b.id = "other";
  EXPECT_THROW(token_iou(a, b), ValidationError);
}

TEST(Iou, RandomAgainstSetOracle) {
  std::mt19937 rng(41);
  const auto base = content_pair();
  const std::size_t n = base.document.tokens.size();
  for (int trial = 0; trial < 1000; ++trial) {
    std::set<std::size_t> x, y;
    for (std::size_t t = 0; t < n; ++t) {
      if (test::uniform(rng, 0, 2) == 0) x.insert(t);
      if (test::uniform(rng, 0, 2) == 0) y.insert(t);
    }
    const double ab = token_iou(with_highlights(base, x), with_highlights(base, y)).mean_iou;
    const double ba = token_iou(with_highlights(base, y), with_highlights(base, x)).mean_iou;
    ASSERT_EQ(ab, test::set_iou(x, y));
    ASSERT_EQ(ab, ba);
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 1.0);
    ASSERT_EQ(ab == 1.0, x == y);
  }
}

TEST(Iou, CorpusMeans) {
  const auto base = content_pair();
  Corpus a, b;
  a.pairs = {with_highlights(base, {1, 2, 3, 4})};
  b.pairs = {with_highlights(base, {3, 4, 5})};
  auto extra = ctr::make_pair("x y", "X.", "q");
  a.pairs.push_back(extra);
  const auto r = corpus_iou(a, b);
  EXPECT_EQ(r.per_pair.size(), 1u);
  EXPECT_DOUBLE_EQ(r.sentence_mean, 0.4);
  EXPECT_DOUBLE_EQ(r.pair_mean, 0.4);
  EXPECT_EQ(r.diagnostics.size(), 1u);
  EXPECT_NE(iou_records(r).find("\"aggregate\""), std::string::npos);
}

// Per-pair token sets for the two-pair fixture: pair 1 has 3 TP, 1 FP, 1 FN
// and pair 2 has 1 TP, 1 FP, 3 FN.
std::pair<Corpus, Corpus> prf_fixture() {
  auto p1 = content_pair();
  auto p2 = ctr::make_pair("one two three four five six", "One.", "p2");
  Corpus pred, gold;
  pred.pairs = {with_highlights(p1, {0, 1, 2, 3}), with_highlights(p2, {0, 1})};
  gold.pairs = {with_highlights(p1, {0, 1, 2, 4}), with_highlights(p2, {0, 2, 3, 4})};
  return {pred, gold};
}

TEST(Prf, TwoPairFixture) {
  const auto [pred, gold] = prf_fixture();
  const auto r = highlight_prf(pred, gold);
  ASSERT_EQ(r.per_pair.size(), 2u);
  EXPECT_EQ(r.per_pair[0].true_positives, 3u);
  EXPECT_EQ(r.per_pair[0].false_positives, 1u);
  EXPECT_EQ(r.per_pair[0].false_negatives, 1u);
  EXPECT_EQ(r.per_pair[1].true_positives, 1u);
  EXPECT_EQ(r.per_pair[1].false_negatives, 3u);
  // Pair scores: (75, 75, 75) and (50, 25, 100/3).
  EXPECT_DOUBLE_EQ(r.macro.precision, 62.5);
  EXPECT_DOUBLE_EQ(r.macro.recall, 50.0);
  EXPECT_NEAR(r.macro.f1, (75.0 + 100.0 / 3.0) / 2.0, 1e-9);
  // Pooled: 4 TP, 2 FP, 4 FN.
  EXPECT_NEAR(r.micro.precision, 200.0 / 3.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.micro.recall, 50.0);
  EXPECT_NEAR(r.micro.f1, 400.0 / 7.0, 1e-9);
}

TEST(Prf, PerfectAndEmptyPredictions) {
  const auto [pred, gold] = prf_fixture();
  const auto same = highlight_prf(gold, gold);
  for (const Prf& p : {same.macro, same.micro}) {
    EXPECT_DOUBLE_EQ(p.precision, 100.0);
    EXPECT_DOUBLE_EQ(p.recall, 100.0);
    EXPECT_DOUBLE_EQ(p.f1, 100.0);
  }
  Corpus empty = gold;
  for (auto& p : empty.pairs) p.alignments.clear();
  const auto none = highlight_prf(empty, gold);
  EXPECT_DOUBLE_EQ(none.macro.recall, 0.0);
  EXPECT_DOUBLE_EQ(none.micro.recall, 0.0);
  EXPECT_FALSE(none.diagnostics.empty());
}

TEST(Prf, MicroEqualsMacroForIdenticalCounts) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto base = content_pair();
    std::set<std::size_t> g, p;
    for (std::size_t t = 0; t < 8; ++t) {
      if (test::uniform(rng, 0, 1)) g.insert(t);
      if (test::uniform(rng, 0, 1)) p.insert(t);
    }
    if (g.empty()) g.insert(0);
    Corpus pred, gold;
    for (int k = 0; k < 3; ++k) {
      auto b = base;
      b.id = "p" + std::to_string(k);
      pred.pairs.push_back(with_highlights(b, p));
      gold.pairs.push_back(with_highlights(b, g));
    }
    const auto r = highlight_prf(pred, gold);
    ASSERT_NEAR(r.micro.precision, r.macro.precision, 1e-9);
    ASSERT_NEAR(r.micro.recall, r.macro.recall, 1e-9);
  }
}

TEST(Prf, FromCounts) {
  const auto p = prf_from_counts(0, 0, 0);
  EXPECT_EQ(p.f1, 0.0);
  const auto q = prf_from_counts(1, 1, 0);
  EXPECT_DOUBLE_EQ(q.precision, 50.0);
  EXPECT_DOUBLE_EQ(q.recall, 100.0);
  EXPECT_NEAR(q.f1, 200.0 / 3.0, 1e-9);
}

TEST(Rouge, Identical) {
  const Seq x = split("the cat sat on the mat");
  EXPECT_DOUBLE_EQ(rouge_n(x, x, 1).f, 100.0);
  EXPECT_DOUBLE_EQ(rouge_n(x, x, 2).f, 100.0);
  EXPECT_DOUBLE_EQ(rouge_l(x, x).f, 100.0);
}

TEST(Rouge, DisjointVocabularies) {
  EXPECT_DOUBLE_EQ(rouge_n(split("a b c"), split("x y z"), 1).f, 0.0);
  EXPECT_DOUBLE_EQ(rouge_l(split("a b c"), split("x y z")).f, 0.0);
}

TEST(Rouge, CatSatExample) {
  const auto c = split("the cat sat"), r = split("the cat ran");
  const auto r1 = rouge_n(c, r, 1);
  EXPECT_DOUBLE_EQ(r1.precision, 200.0 / 3.0);
  EXPECT_DOUBLE_EQ(r1.recall, 200.0 / 3.0);
  const auto o = test::prf_scores(test::ngram_overlap(c, r, 2), 2, 2);
  EXPECT_DOUBLE_EQ(rouge_n(c, r, 2).precision, o.p);
  EXPECT_DOUBLE_EQ(rouge_n(c, r, 2).precision, 50.0);
}

TEST(Rouge, LcsExamples) {
  const auto l = rouge_l(split("a b c d"), split("a c b d"));
  EXPECT_EQ(l.matched, 3u);
  EXPECT_DOUBLE_EQ(l.precision, 75.0);
  EXPECT_DOUBLE_EQ(l.recall, 75.0);
  EXPECT_EQ(rouge_l(split("a b c d e"), split("e d c b a")).matched, 1u);
}

TEST(Rouge, ClippedCounts) {
  const auto r = rouge_n(split("the the the"), split("the cat"), 1);
  EXPECT_EQ(r.matched, 1u);
  EXPECT_NEAR(r.precision, 100.0 / 3.0, 1e-12);
}

TEST(Rouge, OnlyUnigramsAndBigrams) {
  EXPECT_THROW(rouge_n(split("a"), split("a"), 3), ValidationError);
  EXPECT_THROW(rouge_n(split("a"), split("a"), 0), ValidationError);
}

TEST(Rouge, DegenerateInputs) {
  const auto r = rouge_report(Seq{}, split("a b"));
  EXPECT_EQ(r.r1.f, 0.0);
  EXPECT_TRUE(r.r1.degenerate);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Rouge, RandomAgainstOracles) {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto c = test::random_words(rng, test::uniform(rng, 1, 30), 8);
    const auto r = test::random_words(rng, test::uniform(rng, 1, 30), 8);
    for (std::size_t n : {1u, 2u}) {
      const auto got = rouge_n(c, r, n);
      const auto hits = test::ngram_overlap(c, r, n);
      const auto o = test::prf_scores(hits, test::ngram_total(c, n), test::ngram_total(r, n));
      ASSERT_EQ(got.matched, hits);
      ASSERT_EQ(got.precision, o.p);
      ASSERT_EQ(got.recall, o.r);
      ASSERT_EQ(got.f, o.f);
    }
    const auto l = rouge_l(c, r);
    const auto lcs = test::lcs_oracle(c, r);
    const auto o = test::prf_scores(lcs, c.size(), r.size());
    ASSERT_EQ(l.matched, lcs);
    ASSERT_EQ(l.f, o.f);
  }
}

TEST(Rouge, PermutationInvarianceOnlyForUnigrams) {
  std::mt19937 rng(53);
  bool bigram_changed = false;
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = test::random_words(rng, test::uniform(rng, 2, 20), 10);
    const auto ref = test::random_words(rng, test::uniform(rng, 2, 20), 10);
    auto y = x;
    std::shuffle(y.begin(), y.end(), rng);
    ASSERT_EQ(rouge_n(x, ref, 1).f, rouge_n(y, ref, 1).f);
    ASSERT_DOUBLE_EQ(rouge_n(x, x, 1).f, 100.0);
    ASSERT_DOUBLE_EQ(rouge_n(x, x, 2).f, 100.0);
    bigram_changed |= rouge_n(x, ref, 2).f != rouge_n(y, ref, 2).f;
  }
  EXPECT_TRUE(bigram_changed);
  // A fixed case: reordering removes every shared bigram.
  EXPECT_DOUBLE_EQ(rouge_n(split("a b c"), split("a b c"), 2).f, 100.0);
  EXPECT_DOUBLE_EQ(rouge_n(split("c b a"), split("a b c"), 2).f, 0.0);
}

TEST(Rouge, Normalization) {
  EXPECT_EQ(normalize_for_rouge("The prizes, awarded!"), (Seq{"the", "prize", "award"}));
}

TEST(ContentPreservation, FixedPointAndEmpty) {
  const auto doc = textproc::preprocess("d", "The prize was first awarded in 1969. It is famous.");
  const auto h = HighlightSet::canonical("p", std::vector<Span>{{"d", 1, 2}, {"d", 4, 7}, {"d", 10, 11}});
  const auto full = content_preservation(modelio::concat_text(doc, h), doc, h);
  for (const auto& s : {full.r1, full.r2, full.rl}) EXPECT_DOUBLE_EQ(s.f, 100.0);
  const auto empty = content_preservation("", doc, h);
  for (const auto& s : {empty.r1, empty.r2, empty.rl}) EXPECT_EQ(s.f, 0.0);
  EXPECT_FALSE(empty.diagnostics.empty());
}

TEST(ContentPreservation, FixtureAgainstOracle) {
  const auto doc = textproc::preprocess("d", "The prize was first awarded in 1969. It is famous.");
  const auto h = HighlightSet::canonical("p", std::vector<Span>{{"d", 1, 2}, {"d", 4, 7}});
  const std::string generated = "The prize was awarded in 1969.";
  const auto got = content_preservation(generated, doc, h);
  // Reference "prize awarded in 1969", candidate "the prize be award in 1969".
  const Seq c = {"the", "prize", "be", "award", "in", "1969"};
  const Seq r = {"prize", "award", "in", "1969"};
  const auto o1 = test::prf_scores(test::ngram_overlap(c, r, 1), 6, 4);
  const auto o2 = test::prf_scores(test::ngram_overlap(c, r, 2), 5, 3);
  const auto ol = test::prf_scores(test::lcs_oracle(c, r), 6, 4);
  EXPECT_DOUBLE_EQ(got.r1.f, o1.f);
  EXPECT_DOUBLE_EQ(got.r2.f, o2.f);
  EXPECT_DOUBLE_EQ(got.rl.f, ol.f);
  EXPECT_DOUBLE_EQ(got.r1.recall, 100.0);
}

TEST(CorpusRouge, SummaryReferenceMeans) {
  const auto corpus = test::stats_fixture();
  std::vector<std::pair<std::string, std::string>> preds = {
      {corpus.pairs[2].id, "The library opened."}, {corpus.pairs[3].id, "Children slept."}};
  const auto r = corpus_rouge(corpus, preds, RougeReference::kSummary);
  ASSERT_EQ(r.per_pair.size(), 2u);
  EXPECT_DOUBLE_EQ(r.per_pair[0].second.r1.f, 100.0);
  EXPECT_DOUBLE_EQ(r.per_pair[1].second.r1.f, 50.0);
  EXPECT_DOUBLE_EQ(r.mean.r1.f, 75.0);
  std::vector<std::pair<std::string, std::string>> unknown = {{"nope", "x"}};
  EXPECT_THROW(corpus_rouge(corpus, unknown, RougeReference::kSummary), ValidationError);
}

TEST(Stats, HandCountedFixture) {
  const auto r = dataset_stats(test::stats_fixture());
  EXPECT_EQ(r.unique_docs, 3u);
  EXPECT_EQ(r.pair_count, 6u);
  EXPECT_DOUBLE_EQ(r.mean_summaries_per_doc, 2.0);
  EXPECT_DOUBLE_EQ(r.mean_input_tokens, 50.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.mean_output_tokens, 25.0 / 6.0);
  EXPECT_EQ(r.max_input_tokens, 11u);
  EXPECT_EQ(r.max_output_tokens, 6u);
  EXPECT_DOUBLE_EQ(r.mean_input_sentences, 2.0);
  EXPECT_DOUBLE_EQ(r.mean_output_sentences, 7.0 / 6.0);
  EXPECT_EQ(r.aligned_summary_sentences, 6u);
  EXPECT_EQ(r.multi_sentence_alignments, 1u);
  EXPECT_DOUBLE_EQ(r.pct_multi_sentence_alignments, 100.0 / 6.0);
}

TEST(Stats, SingleSentenceAlignmentsGiveZeroMulti) {
  EXPECT_EQ(dataset_stats(test::stats_fixture(false)).pct_multi_sentence_alignments, 0.0);
}

TEST(Stats, EmptyCorpus) {
  EXPECT_EQ(dataset_stats(Corpus{}), StatsReport{});
  EXPECT_NE(stats_table(StatsReport{}).find("0.00/0.00"), std::string::npos);
}

TEST(Stats, TableLayout) {
  const auto t = stats_table(dataset_stats(test::stats_fixture()), "fixture");
  EXPECT_NE(t.find("| fixture"), std::string::npos);
  EXPECT_NE(t.find("8.33/4.17"), std::string::npos);
  EXPECT_NE(t.find("11/6"), std::string::npos);
  EXPECT_NE(t.find("2.00/1.17"), std::string::npos);
  EXPECT_NE(t.find("16.67 %"), std::string::npos);
}

TEST(Report, Rounding) {
  EXPECT_DOUBLE_EQ(round2(54.16666), 54.17);
  const auto [pred, gold] = prf_fixture();
  const auto j = nlohmann::json::parse(split(prf_records(highlight_prf(pred, gold))).back());
  EXPECT_DOUBLE_EQ(j["aggregate"]["macro"]["F1"].get<double>(), 54.17);
  EXPECT_DOUBLE_EQ(j["aggregate"]["micro"]["F1"].get<double>(), 57.14);
}

}  // namespace
}  // namespace ctr::eval
