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

#ifndef CTR_KERNELS_HPP_
#define CTR_KERNELS_HPP_

// Data-parallel kernels. Every kernel has an OpenMP version used by the
// library and a plain serial version kept as the reference the tests and the
// benchmark compare against. Both must produce identical results.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "ctr/textproc.hpp"

namespace ctr::kernels {

namespace serial {

// Entry-by-entry lemma_similarity thresholding.
textproc::RelationMatrix relation_matrix(std::span<const Token> summary,
                                         std::span<const Token> document, double threshold);

}  // namespace serial

namespace omp {

// Deduplicates lemmas on both sides, scores the distinct pairs in parallel
// and scatters the result.
textproc::RelationMatrix relation_matrix(std::span<const Token> summary,
                                         std::span<const Token> document, double threshold);

}  // namespace omp

// Runs fn(i) for i in [0, n) and returns the results in index order, so a
// later reduction sees the same sequence regardless of the thread count. If
// any call throws, the exception with the lowest index is rethrown after the
// loop.
template <class Result, class Fn>
std::vector<Result> ordered_map(std::size_t n, Fn&& fn, bool parallel = true) {
  std::vector<Result> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto run = [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
      run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) run(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Threads OpenMP will use for the next parallel region.
int max_threads();

}  // namespace ctr::kernels

#endif  // CTR_KERNELS_HPP_
