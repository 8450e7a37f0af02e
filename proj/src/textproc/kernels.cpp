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

#include "ctr/kernels.hpp"

#include <omp.h>

#include <string>
#include <unordered_map>

#include "ctr/error.hpp"

namespace ctr::kernels {

namespace {

void check_threshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw ValidationError("lemma threshold must lie in [0, 1], got " + std::to_string(threshold));
}

}  // namespace

namespace serial {

textproc::RelationMatrix relation_matrix(std::span<const Token> summary,
                                         std::span<const Token> document, double threshold) {
  check_threshold(threshold);
  textproc::RelationMatrix m(summary.size(), document.size());
  for (std::size_t i = 0; i < summary.size(); ++i)
    for (std::size_t j = 0; j < document.size(); ++j)
      m.set(i, j, textproc::lemma_similarity(summary[i].lemma, document[j].lemma) >= threshold);
  return m;
}

}  // namespace serial

namespace omp {

textproc::RelationMatrix relation_matrix(std::span<const Token> summary,
                                         std::span<const Token> document, double threshold) {
  check_threshold(threshold);
  const auto intern = [](std::span<const Token> tokens, std::vector<std::string_view>& distinct) {
    std::unordered_map<std::string_view, std::size_t> ids;
    std::vector<std::size_t> index(tokens.size());
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      auto [it, inserted] = ids.try_emplace(tokens[k].lemma, distinct.size());
      if (inserted) distinct.push_back(tokens[k].lemma);
      index[k] = it->second;
    }
    return index;
  };
  std::vector<std::string_view> rows, cols;
  const auto row_of = intern(summary, rows);
  const auto col_of = intern(document, cols);

  std::vector<std::uint8_t> table(rows.size() * cols.size());
  const auto nrows = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t r = 0; r < nrows; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    for (std::size_t c = 0; c < cols.size(); ++c)
      table[ru * cols.size() + c] = textproc::lemma_similarity(rows[ru], cols[c]) >= threshold;
  }

  textproc::RelationMatrix m(summary.size(), document.size());
  for (std::size_t i = 0; i < summary.size(); ++i)
    for (std::size_t j = 0; j < document.size(); ++j)
      m.set(i, j, table[row_of[i] * cols.size() + col_of[j]] != 0);
  return m;
}

}  // namespace omp

int max_threads() { return omp_get_max_threads(); }

}  // namespace ctr::kernels
