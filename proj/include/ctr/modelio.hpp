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

#ifndef CTR_MODELIO_HPP_
#define CTR_MODELIO_HPP_

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctr/corpus.hpp"

namespace ctr::modelio {

inline constexpr std::string_view kHighlightStart = "<highlight_start>";
inline constexpr std::string_view kHighlightEnd = "<highlight_end>";
inline constexpr std::size_t kDefaultMaxLen = 4096;
inline constexpr std::size_t kNoSource = std::numeric_limits<std::size_t>::max();

// A document token that spells a marker (or an already escaped marker) gets
// one more leading backslash; unescape_token undoes exactly one level.
std::string escape_token(std::string_view token);
std::string unescape_token(std::string_view token);

struct MarkedSequence {
  std::vector<std::string> tokens;
  // True exactly on marker tokens.
  std::vector<bool> global_mask;
  // Source token index per position; kNoSource on markers.
  std::vector<std::size_t> source_map;

  friend bool operator==(const MarkedSequence&, const MarkedSequence&) = default;
};

struct MarkerEncoding {
  MarkedSequence sequence;
  bool truncated = false;
  // Spans left out because they did not fit in full.
  std::size_t dropped_spans = 0;
};

// Wraps every span of `highlights` in start/end markers. The output holds at
// most max_len tokens; a span that does not fit whole is dropped together with
// everything after it, so markers always come in pairs. Throws
// ValidationError for a non-canonical set, a span outside the document or
// max_len == 0.
MarkerEncoding encode_with_markers(const Document& doc, const HighlightSet& highlights,
                                   std::size_t max_len = kDefaultMaxLen);

struct StrippedSequence {
  std::vector<std::string> tokens;
  HighlightSet highlights;
};

// Inverse of encode_with_markers. Spans in the result name text_id. Throws
// ValidationError on unbalanced or empty marker pairs, naming the position.
StrippedSequence strip_markers(const MarkedSequence& sequence, std::string pair_id,
                               std::string text_id);

// Highlighted tokens in document order, with a "." token between spans that
// come from different document sentences. Throws on an empty set.
std::vector<std::string> encode_concat_only(const Document& doc, const HighlightSet& highlights);

// encode_concat_only rendered as text: each span verbatim from raw_text, a
// plain space between spans of one sentence and ". " across sentences.
std::string concat_text(const Document& doc, const HighlightSet& highlights);

enum class Mode { kMarkers, kConcat };
Mode mode_from_string(std::string_view s);

struct ExportRecord {
  nlohmann::json record;
  std::size_t dropped_spans = 0;
};

// {pair_id, input_tokens, global_mask, target_text}; target_text is the
// summary's raw text.
ExportRecord export_record(const DocumentSummaryPair& pair, const HighlightSet& highlights,
                           Mode mode, std::size_t max_len = kDefaultMaxLen);

}  // namespace ctr::modelio

#endif  // CTR_MODELIO_HPP_
