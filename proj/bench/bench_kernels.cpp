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

#include <benchmark/benchmark.h>

#include "ctr/evalsuite.hpp"
#include "ctr/kernels.hpp"
#include "ctr/silveralign.hpp"
#include "ctr/textproc.hpp"
#include "support.hpp"

namespace {

using namespace ctr;

Document synthetic(std::size_t sentences, unsigned seed) {
  std::mt19937 rng(seed);
  return textproc::preprocess("d", test::random_text(rng, sentences));
}

// Document size grows with the argument; the summary stays ~120 tokens.
void BM_RelationSerial(benchmark::State& state) {
  const auto doc = synthetic(static_cast<std::size_t>(state.range(0)), 1);
  const auto sum = synthetic(16, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::serial::relation_matrix(sum.tokens, doc.tokens, 0.86));
  state.counters["cells"] = static_cast<double>(sum.tokens.size() * doc.tokens.size());
}

void BM_RelationOmp(benchmark::State& state) {
  const auto doc = synthetic(static_cast<std::size_t>(state.range(0)), 1);
  const auto sum = synthetic(16, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::omp::relation_matrix(sum.tokens, doc.tokens, 0.86));
  state.counters["cells"] = static_cast<double>(sum.tokens.size() * doc.tokens.size());
  state.counters["threads"] = kernels::max_threads();
}

BENCHMARK(BM_RelationSerial)->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RelationOmp)->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

Corpus synthetic_corpus(std::size_t pairs) {
  std::mt19937 rng(3);
  Corpus c;
  for (std::size_t i = 0; i < pairs; ++i)
    c.pairs.push_back(ctr::make_pair(test::random_text(rng, 30), test::random_text(rng, 4),
                                     "p" + std::to_string(i)));
  return c;
}

void BM_AlignCorpus(benchmark::State& state) {
  const auto corpus = synthetic_corpus(16);
  silveralign::LexicalBackend backend;
  const bool parallel = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(silveralign::align_corpus(corpus, backend, 0.5, parallel));
  state.SetLabel(parallel ? "omp" : "serial");
}
BENCHMARK(BM_AlignCorpus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CorpusIou(benchmark::State& state) {
  silveralign::LexicalBackend backend;
  const auto corpus = synthetic_corpus(32);
  const auto a = silveralign::align_corpus(corpus, backend, 0.5);
  const auto b = silveralign::align_corpus(corpus, backend, 0.7);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(eval::corpus_iou(a, b, true, parallel));
  state.SetLabel(parallel ? "omp" : "serial");
}
BENCHMARK(BM_CorpusIou)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_RougeL(benchmark::State& state) {
  std::mt19937 rng(4);
  const auto len = static_cast<std::size_t>(state.range(0));
  const auto c = test::random_words(rng, len, 50);
  const auto r = test::random_words(rng, len, 50);
  for (auto _ : state) benchmark::DoNotOptimize(eval::rouge_l(c, r));
}
BENCHMARK(BM_RougeL)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
