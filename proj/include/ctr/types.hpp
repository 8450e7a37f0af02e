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

#ifndef CTR_TYPES_HPP_
#define CTR_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace ctr {

// Half-open [begin, end) interval of indices. The tag keeps token ranges and
// sentence ranges from being mixed up.
template <class Tag>
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin >= end; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  friend auto operator<=>(const IndexRange&, const IndexRange&) = default;
};

struct TokenTag {};
struct SentenceTag {};
using TokenRange = IndexRange<TokenTag>;
using SentenceRange = IndexRange<SentenceTag>;

// char_start/char_end are UTF-8 byte offsets into the owning text.
struct Token {
  std::string surface;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string lemma;
  bool is_content = false;

  friend bool operator==(const Token&, const Token&) = default;
};

// A preprocessed text: a source document or a summary.
struct Document {
  std::string id;
  std::string raw_text;
  std::vector<Token> tokens;
  std::vector<TokenRange> sentences;
  std::vector<SentenceRange> paragraphs;

  // Index of the sentence holding token `token`. Requires token < tokens.size().
  std::size_t sentence_of(std::size_t token) const;

  friend bool operator==(const Document&, const Document&) = default;
};

// Throws ValidationError if the document breaks any structural invariant:
// sentences sorted, disjoint and covering every token; paragraphs nesting
// whole sentences and covering all of them; token offsets mapping back to
// raw_text.
void validate_document(const Document& doc);

}  // namespace ctr

#endif  // CTR_TYPES_HPP_
