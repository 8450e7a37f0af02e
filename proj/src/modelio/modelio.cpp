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

#include "ctr/modelio.hpp"

#include <algorithm>
#include <optional>

#include "ctr/error.hpp"
#include "ctr/textproc.hpp"

namespace ctr::modelio {

namespace {

bool is_marker_like(std::string_view token) {
  while (!token.empty() && token.front() == '\\') token.remove_prefix(1);
  return token == kHighlightStart || token == kHighlightEnd;
}

void check_highlights(const Document& doc, const HighlightSet& highlights) {
  if (!is_canonical(highlights.spans))
    throw ValidationError("highlight set for '" + highlights.pair_id +
                          "' is not canonical; canonicalize it first");
  for (const Span& s : highlights.spans) {
    if (s.text_id != doc.id)
      throw ValidationError("highlight span references '" + s.text_id + "', not document '" +
                            doc.id + "'");
    if (s.token_end > doc.tokens.size())
      throw ValidationError("highlight span [" + std::to_string(s.token_start) + "," +
                            std::to_string(s.token_end) + ") exceeds " +
                            std::to_string(doc.tokens.size()) + " tokens");
  }
}

std::vector<std::string> surfaces(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const Token& t : tokens) out.push_back(t.surface);
  return out;
}

bool ends_with_word_char(std::string_view s) {
  if (s.empty()) return false;
  const char c = s.back();
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         static_cast<unsigned char>(c) >= 0x80;
}

}  // namespace

std::string escape_token(std::string_view token) {
  return is_marker_like(token) ? "\\" + std::string(token) : std::string(token);
}

std::string unescape_token(std::string_view token) {
  if (token.size() > 1 && token.front() == '\\' && is_marker_like(token.substr(1)))
    return std::string(token.substr(1));
  return std::string(token);
}

MarkerEncoding encode_with_markers(const Document& doc, const HighlightSet& highlights,
                                   std::size_t max_len) {
  if (max_len == 0) throw ValidationError("max_len must be positive");
  check_highlights(doc, highlights);
  MarkerEncoding enc;
  MarkedSequence& seq = enc.sequence;
  const auto push = [&](std::string token, bool marker, std::size_t source) {
    seq.tokens.push_back(std::move(token));
    seq.global_mask.push_back(marker);
    seq.source_map.push_back(source);
  };

  const auto& spans = highlights.spans;
  std::size_t next_span = 0;
  std::size_t t = 0;
  while (t < doc.tokens.size()) {
    if (next_span < spans.size() && spans[next_span].token_start == t) {
      const Span& s = spans[next_span];
      if (seq.tokens.size() + s.size() + 2 > max_len) break;
      push(std::string(kHighlightStart), true, kNoSource);
      for (; t < s.token_end; ++t) push(escape_token(doc.tokens[t].surface), false, t);
      push(std::string(kHighlightEnd), true, kNoSource);
      ++next_span;
      continue;
    }
    if (seq.tokens.size() + 1 > max_len) break;
    push(escape_token(doc.tokens[t].surface), false, t);
    ++t;
  }
  enc.truncated = t < doc.tokens.size();
  enc.dropped_spans = spans.size() - next_span;
  return enc;
}

StrippedSequence strip_markers(const MarkedSequence& sequence, std::string pair_id,
                               std::string text_id) {
  StrippedSequence out;
  std::vector<Span> spans;
  bool open = false;
  std::size_t open_start = 0;  // output index where the open span starts
  std::size_t open_position = 0;
  for (std::size_t p = 0; p < sequence.tokens.size(); ++p) {
    const std::string& token = sequence.tokens[p];
    if (token == kHighlightStart) {
      if (open)
        throw ValidationError("nested <highlight_start> at position " + std::to_string(p) +
                              " (previous one at " + std::to_string(open_position) + ")");
      open = true;
      open_start = out.tokens.size();
      open_position = p;
    } else if (token == kHighlightEnd) {
      if (!open)
        throw ValidationError("<highlight_end> without a start at position " + std::to_string(p));
      if (open_start == out.tokens.size())
        throw ValidationError("empty highlight ending at position " + std::to_string(p));
      spans.push_back(Span{text_id, open_start, out.tokens.size()});
      open = false;
    } else {
      out.tokens.push_back(unescape_token(token));
    }
  }
  if (open)
    throw ValidationError("unterminated <highlight_start> at position " +
                          std::to_string(open_position));
  out.highlights = HighlightSet{std::move(pair_id), std::move(spans)};
  return out;
}

std::vector<std::string> encode_concat_only(const Document& doc, const HighlightSet& highlights) {
  check_highlights(doc, highlights);
  if (highlights.spans.empty())
    throw ValidationError("pair '" + highlights.pair_id + "' has no highlights to concatenate");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < highlights.spans.size(); ++k) {
    const Span& s = highlights.spans[k];
    if (k > 0 && doc.sentence_of(highlights.spans[k - 1].token_end - 1) !=
                     doc.sentence_of(s.token_start))
      out.emplace_back(".");
    for (std::size_t t = s.token_start; t < s.token_end; ++t) out.push_back(doc.tokens[t].surface);
  }
  return out;
}

std::string concat_text(const Document& doc, const HighlightSet& highlights) {
  check_highlights(doc, highlights);
  if (highlights.spans.empty())
    throw ValidationError("pair '" + highlights.pair_id + "' has no highlights to concatenate");
  const auto& lexicon = textproc::Lexicon::builtin();

  const auto join_span = [&](const Span& s) {
    std::string joined;
    for (std::size_t t = s.token_start; t < s.token_end; ++t) {
      if (!joined.empty()) joined.push_back(' ');
      joined += doc.tokens[t].surface;
    }
    return joined;
  };

  // Verbatim slice of raw_text when it re-tokenizes to the same tokens,
  // otherwise the tokens joined by spaces.
  const auto render_span = [&](const Span& s) {
    const std::span<const Token> tokens(doc.tokens.data() + s.token_start, s.size());
    const std::size_t from = tokens.front().char_start;
    std::string verbatim = doc.raw_text.substr(from, tokens.back().char_end - from);
    if (surfaces(textproc::tokenize(verbatim, lexicon)) == surfaces(tokens)) return verbatim;
    return join_span(s);
  };

  const auto render = [&](bool verbatim) {
    std::string out;
    for (std::size_t k = 0; k < highlights.spans.size(); ++k) {
      const Span& s = highlights.spans[k];
      if (k > 0) {
        const Span& prev = highlights.spans[k - 1];
        if (doc.sentence_of(prev.token_end - 1) != doc.sentence_of(s.token_start)) {
          const std::string& last = doc.tokens[prev.token_end - 1].surface;
          std::string lowered;
          for (char c : last) lowered.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c + 32) : c);
          const bool attach =
              verbatim && ends_with_word_char(last) && !lexicon.is_abbreviation(lowered + ".");
          out += attach ? ". " : " . ";
        } else {
          out.push_back(' ');
        }
      }
      out += verbatim ? render_span(s) : join_span(s);
    }
    return out;
  };

  // Context across a separator can still merge tokens (e.g. "U.S" + "."); the
  // space-joined form never does.
  std::string text = render(true);
  if (surfaces(textproc::tokenize(text, lexicon)) != encode_concat_only(doc, highlights))
    text = render(false);
  return text;
}

Mode mode_from_string(std::string_view s) {
  if (s == "markers") return Mode::kMarkers;
  if (s == "concat") return Mode::kConcat;
  throw ValidationError("unknown encode mode '" + std::string(s) + "' (expected markers or concat)");
}

ExportRecord export_record(const DocumentSummaryPair& pair, const HighlightSet& highlights,
                           Mode mode, std::size_t max_len) {
  ExportRecord out;
  std::vector<std::string> tokens;
  std::vector<bool> mask;
  if (mode == Mode::kMarkers) {
    MarkerEncoding enc = encode_with_markers(pair.document, highlights, max_len);
    tokens = std::move(enc.sequence.tokens);
    mask = std::move(enc.sequence.global_mask);
    out.dropped_spans = enc.dropped_spans;
  } else {
    tokens = encode_concat_only(pair.document, highlights);
    mask.assign(tokens.size(), false);
  }
  out.record = {{"pair_id", pair.id},
                {"input_tokens", std::move(tokens)},
                {"global_mask", std::move(mask)},
                {"target_text", pair.summary.raw_text}};
  return out;
}

}  // namespace ctr::modelio
