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

#ifndef CTR_CORPUS_HPP_
#define CTR_CORPUS_HPP_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctr/textproc.hpp"
#include "ctr/types.hpp"

namespace ctr {

inline constexpr int kFormatVersion = 1;

// Contiguous token region [token_start, token_end) of the text named text_id.
struct Span {
  std::string text_id;
  std::size_t token_start = 0;
  std::size_t token_end = 0;

  std::size_t size() const { return token_end - token_start; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

// One summary fact (possibly discontinuous) mapped to the document spans
// expressing it. score is set only for automatic alignments.
struct Alignment {
  std::vector<Span> summary_spans;
  std::vector<Span> document_spans;
  std::string annotator_id;
  std::optional<double> score;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

enum class Provenance { kManual, kSilver };

std::string_view to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

struct DocumentSummaryPair {
  std::string id;
  Document document;
  Document summary;
  std::vector<Alignment> alignments;
  Provenance provenance = Provenance::kManual;
  // Free-form markers such as "uncovered" (no summary fact was aligned).
  std::vector<std::string> flags;

  bool has_flag(std::string_view flag) const;
  friend bool operator==(const DocumentSummaryPair&, const DocumentSummaryPair&) = default;
};

struct Corpus {
  std::vector<DocumentSummaryPair> pairs;

  const DocumentSummaryPair* find(std::string_view id) const;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Sorted, disjoint spans over one text. Adjacent spans are merged too, so two
// sets covering the same tokens have the same canonical form.
std::vector<Span> canonicalize(std::span<const Span> spans);
bool is_canonical(std::span<const Span> spans);

struct HighlightSet {
  std::string pair_id;
  std::vector<Span> spans;

  // Merges and sorts `spans` on construction.
  static HighlightSet canonical(std::string pair_id, std::span<const Span> spans);

  std::size_t token_count() const;
  // Token indices covered by the set, ascending.
  std::vector<std::size_t> token_indices() const;
  friend bool operator==(const HighlightSet&, const HighlightSet&) = default;
};

// Union of all document spans over all alignments. Throws ValidationError
// when the pair has no alignment.
HighlightSet highlights_of(const DocumentSummaryPair& pair);

// Throws ValidationError unless the alignment fits the pair: both span lists
// non-empty, every span non-empty, inside its text and naming the right text.
void validate_alignment(const DocumentSummaryPair& pair, const Alignment& alignment);

// Content-hash ids: hex SHA-256 prefix of the cleaned text(s).
std::string content_hash(std::string_view text);
std::string document_id_for(std::string_view raw_document);
std::string summary_id_for(std::string_view raw_summary);
std::string pair_id_for(std::string_view raw_document, std::string_view raw_summary);

// Preprocesses both texts and assigns content-hash ids (pair_id overrides the
// pair id when non-empty).
DocumentSummaryPair make_pair(std::string_view raw_document, std::string_view raw_summary,
                              std::string pair_id = {},
                              const textproc::Lexicon& lexicon = textproc::Lexicon::builtin());

enum class IngestFormat { kPairLines, kPlainDir };

IngestFormat ingest_format_from_string(std::string_view s);

// pair-lines: one JSON object per line with string fields "document" and
// "summary" and optional "id" and "provenance". Blank lines are skipped.
// plain-dir: NAME.document.txt paired with every NAME.summary*.txt file.
Corpus ingest(const std::filesystem::path& path, IngestFormat format,
              const textproc::Lexicon& lexicon = textproc::Lexicon::builtin());

void save(const Corpus& corpus, const std::filesystem::path& path);
std::string serialize(const Corpus& corpus);
Corpus load(const std::filesystem::path& path);
Corpus deserialize(std::string_view text);

}  // namespace ctr

#endif  // CTR_CORPUS_HPP_
