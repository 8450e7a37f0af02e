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

#include "ctr/types.hpp"

#include <algorithm>
#include <string>

#include "ctr/error.hpp"

namespace ctr {

std::size_t Document::sentence_of(std::size_t token) const {
  auto it = std::upper_bound(
      sentences.begin(), sentences.end(), token,
      [](std::size_t t, const TokenRange& r) { return t < r.end; });
  return static_cast<std::size_t>(it - sentences.begin());
}

void validate_document(const Document& doc) {
  const auto fail = [&](const std::string& what) {
    throw ValidationError("text '" + doc.id + "': " + what);
  };
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Token& t = doc.tokens[i];
    if (t.char_start >= t.char_end || t.char_end > doc.raw_text.size())
      fail("token " + std::to_string(i) + " has an invalid character range");
    if (doc.raw_text.compare(t.char_start, t.char_end - t.char_start, t.surface) != 0)
      fail("token " + std::to_string(i) + " does not match raw_text");
    if (i > 0 && t.char_start < doc.tokens[i - 1].char_end)
      fail("token " + std::to_string(i) + " overlaps its predecessor");
  }
  std::size_t next = 0;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const TokenRange& r = doc.sentences[s];
    if (r.begin != next || r.end <= r.begin)
      fail("sentence " + std::to_string(s) + " breaks the token partition");
    next = r.end;
  }
  if (next != doc.tokens.size()) fail("sentences do not cover all tokens");
  std::size_t next_sentence = 0;
  for (std::size_t p = 0; p < doc.paragraphs.size(); ++p) {
    const SentenceRange& r = doc.paragraphs[p];
    if (r.begin != next_sentence || r.end <= r.begin)
      fail("paragraph " + std::to_string(p) + " breaks the sentence partition");
    next_sentence = r.end;
  }
  if (next_sentence != doc.sentences.size())
    fail("paragraphs do not cover all sentences");
}

}  // namespace ctr
