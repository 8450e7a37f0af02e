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

#ifndef CTR_TEXTPROC_HPP_
#define CTR_TEXTPROC_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ctr/types.hpp"

namespace ctr::textproc {

inline constexpr double kDefaultLemmaThreshold = 0.86;
inline constexpr std::size_t kDefaultParagraphCap = 5;

// Word lists driving lemmatization, content-word tagging and sentence
// splitting. The builtin instance is compiled from resources/*.txt.
class Lexicon {
 public:
  static const Lexicon& builtin();

  // Replaces the stopword list and/or the lemma exception table with files
  // in the resource format (one entry per line, '#' comments). An empty path
  // keeps the builtin list.
  static Lexicon load(const std::filesystem::path& stopwords,
                      const std::filesystem::path& lemma_exceptions);

  static Lexicon from_text(std::string_view stopwords,
                           std::string_view lemma_exceptions,
                           std::string_view abbreviations);

  bool is_stopword(std::string_view lowered) const;
  bool is_abbreviation(std::string_view lowered) const;
  const std::string* exception_lemma(std::string_view lowered) const;

  std::size_t stopword_count() const { return stopwords_.size(); }

 private:
  std::unordered_set<std::string> stopwords_;
  std::unordered_map<std::string, std::string> exceptions_;
  std::unordered_set<std::string> abbreviations_;
};

// Drops control characters (except tab and newline), zero-width code points
// and byte-order marks; normalizes CR and CRLF to LF.
std::string clean_text(std::string_view raw);

// Tokens cover every non-whitespace character. Punctuation is split from
// words except inside dotted abbreviations ("U.S."), listed abbreviations
// ("Dr."), numbers ("3.5", "1,000") and word-internal apostrophes ("don't").
// Runs of one repeated punctuation character ("...", "--") form one token.
// Lemma and content flag are left empty; see annotate().
std::vector<Token> tokenize(std::string_view text,
                            const Lexicon& lexicon = Lexicon::builtin());

// A sentence ends after '.', '!', '?' or an ellipsis (plus any closing quotes
// or brackets) when the next token starts with an uppercase letter or a
// digit, or at end of text.
std::vector<TokenRange> split_sentences(std::span<const Token> tokens);

// Lowercase; then the exception table; stopwords map to themselves; then
// suffix rules for plurals, -ing, -ed and doubled-consonant or -ier/-iest
// comparatives; otherwise the lowercased surface.
std::string lemmatize(std::string_view surface,
                      const Lexicon& lexicon = Lexicon::builtin());

// False for stopword lemmas and for tokens with no letter or digit.
bool is_content_word(const Token& token,
                     const Lexicon& lexicon = Lexicon::builtin());

// True if the text holds a letter or digit (non-ASCII letters included).
bool has_word_char(std::string_view text);

// Fills lemma and is_content on every token.
void annotate(std::span<Token> tokens, const Lexicon& lexicon = Lexicon::builtin());

// Ratcliff/Obershelp ratio 2*M/T over code points, where M is the total size
// of the recursively found longest matching blocks. Arguments are put in
// lexicographic order first, so the result is symmetric. Two empty strings
// give 1, one empty string gives 0.
double lemma_similarity(std::string_view a, std::string_view b);

// Decodes UTF-8 into code points; invalid bytes map to U+FFFD.
std::u32string decode_utf8(std::string_view text);

// Binary summary-token x document-token matrix.
class RelationMatrix {
 public:
  RelationMatrix() = default;
  RelationMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v) { cells_[i * cols_ + j] = v ? 1 : 0; }
  std::span<const std::uint8_t> row(std::size_t i) const {
    return {cells_.data() + i * cols_, cols_};
  }
  std::size_t count_ones() const;

  friend bool operator==(const RelationMatrix&, const RelationMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

// M[i][j] = 1 iff lemma_similarity(summary[i].lemma, document[j].lemma) >=
// threshold. Throws ValidationError when threshold is outside [0, 1].
RelationMatrix relation_matrix(std::span<const Token> summary,
                               std::span<const Token> document,
                               double threshold = kDefaultLemmaThreshold);

// Greedy grouping of consecutive sentences: a paragraph closes when it holds
// `cap` sentences or when the next sentence shares no content lemma with the
// previous one.
std::vector<SentenceRange> segment_paragraphs(const Document& doc,
                                              std::size_t cap = kDefaultParagraphCap);

// Document token j is bold iff it is a content word and matrix(i, j) is set
// for some token i of summary sentence `sentence`. Throws ValidationError if
// the sentence index or the matrix shape is out of range.
std::vector<bool> bold_mask(const Document& doc, const Document& summary,
                            const RelationMatrix& matrix, std::size_t sentence);

// clean_text + tokenize + annotate + split_sentences + segment_paragraphs.
Document preprocess(std::string id, std::string_view raw,
                    const Lexicon& lexicon = Lexicon::builtin());

}  // namespace ctr::textproc

#endif  // CTR_TEXTPROC_HPP_
