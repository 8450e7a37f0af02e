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

#include "ctr/textproc.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "ctr/error.hpp"
#include "ctr/kernels.hpp"

namespace ctr::textproc {

namespace resources {
extern const std::string_view kStopwords;
extern const std::string_view kLemmaExceptions;
extern const std::string_view kAbbreviations;
}  // namespace resources

namespace {

std::vector<std::string_view> resource_lines(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open resource file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

// One decoded code point with its byte extent in the source text.
struct CodePoint {
  char32_t cp;
  std::size_t offset;
  std::size_t length;
};

std::vector<CodePoint> decode_with_offsets(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    char32_t cp = 0xFFFD;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back({0xFFFD, i, 1});
      ++i;
      continue;
    }
    bool ok = i + len <= text.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) ok = false;
      else cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back({0xFFFD, i, 1});
      ++i;
      continue;
    }
    out.push_back({cp, i, len});
    i += len;
  }
  return out;
}

bool is_space(char32_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' ||
         c == 0xA0 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 ||
         c == 0x202F || c == 0x205F || c == 0x3000;
}

// Letters and digits, treating non-ASCII code points as letters unless they
// sit in a punctuation or symbol block.
bool is_word_char(char32_t c) {
  if (c < 0x80) return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
  if (c >= 0xA1 && c <= 0xBF) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2010 && c <= 0x206F) return false;
  if (c >= 0x20A0 && c <= 0x20CF) return false;
  if (c >= 0x2190 && c <= 0x2BFF) return false;
  if (c >= 0x3000 && c <= 0x303F) return false;
  if (c >= 0xFF01 && c <= 0xFF0F) return false;
  if (c == 0xFFFD) return false;
  return !is_space(c);
}

bool is_ascii_letter(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

bool is_upper_start(char32_t c) {
  return (c >= 'A' && c <= 'Z') || (c >= 0xC0 && c <= 0xDE && c != 0xD7) || is_digit(c);
}

bool is_terminal(std::string_view surface) {
  if (surface == "\xE2\x80\xA6") return true;  // U+2026
  if (surface.empty()) return false;
  return std::all_of(surface.begin(), surface.end(),
                     [](char c) { return c == '.' || c == '!' || c == '?'; });
}

bool is_closer(std::string_view s) {
  return s == "\"" || s == "'" || s == ")" || s == "]" || s == "}" ||
         s == "\xE2\x80\x9D" || s == "\xE2\x80\x99";
}

bool is_opener(std::string_view s) {
  return s == "\"" || s == "'" || s == "(" || s == "[" || s == "\xE2\x80\x9C" ||
         s == "\xE2\x80\x98";
}

char32_t first_code_point(std::string_view s) {
  const auto cps = decode_with_offsets(s.substr(0, std::min<std::size_t>(4, s.size())));
  return cps.empty() ? 0 : cps.front().cp;
}

bool has_alnum(std::string_view s) {
  for (const auto& c : decode_with_offsets(s))
    if (is_word_char(c.cp)) return true;
  return false;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }
bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }
bool ends_with(std::string_view s, std::string_view suf) {
  return s.size() >= suf.size() && s.substr(s.size() - suf.size()) == suf;
}

int vowel_groups(std::string_view s) {
  int groups = 0;
  bool in = false;
  for (char c : s) {
    const bool v = is_vowel(c);
    if (v && !in) ++groups;
    in = v;
  }
  return groups;
}

// Restores the base form of a stem left by stripping -ed or -ing.
std::string restore_stem(std::string stem) {
  const auto n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && is_consonant(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z' && stem[n - 1] != 'f') {
    stem.pop_back();
    return stem;
  }
  if (n >= 3 && is_consonant(stem[n - 3]) && is_vowel(stem[n - 2]) &&
      is_consonant(stem[n - 1]) && stem[n - 1] != 'w' && stem[n - 1] != 'x' &&
      stem[n - 1] != 'y' && vowel_groups(stem) == 1) {
    return stem + "e";
  }
  if (n >= 3 && is_vowel(stem[n - 3]) && is_vowel(stem[n - 2]) && stem[n - 1] == 's')
    return stem + "e";
  if (n >= 2 && (stem[n - 1] == 'v' || (stem[n - 1] == 'c' && stem[n - 2] != 'c') ||
                 ends_with(stem, "rg") || ends_with(stem, "dg") || ends_with(stem, "lg")))
    return stem + "e";
  return stem;
}

}  // namespace

Lexicon Lexicon::from_text(std::string_view stopwords, std::string_view lemma_exceptions,
                           std::string_view abbreviations) {
  Lexicon lex;
  for (auto line : resource_lines(stopwords)) lex.stopwords_.insert(ascii_lower(line));
  std::size_t line_no = 0;
  for (auto line : resource_lines(lemma_exceptions)) {
    ++line_no;
    const auto tab = line.find_first_of("\t ");
    if (tab == std::string_view::npos)
      throw ParseError("lemma exception entry needs 'surface<TAB>lemma'", line_no);
    auto lemma = line.substr(tab + 1);
    while (!lemma.empty() && (lemma.front() == ' ' || lemma.front() == '\t')) lemma.remove_prefix(1);
    lex.exceptions_.emplace(ascii_lower(line.substr(0, tab)), ascii_lower(lemma));
  }
  for (auto line : resource_lines(abbreviations)) lex.abbreviations_.insert(ascii_lower(line));
  return lex;
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon lex = from_text(resources::kStopwords, resources::kLemmaExceptions,
                                       resources::kAbbreviations);
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& stopwords,
                      const std::filesystem::path& lemma_exceptions) {
  const std::string sw = stopwords.empty() ? std::string(resources::kStopwords) : read_file(stopwords);
  const std::string ex = lemma_exceptions.empty() ? std::string(resources::kLemmaExceptions)
                                                  : read_file(lemma_exceptions);
  return from_text(sw, ex, resources::kAbbreviations);
}

bool Lexicon::is_stopword(std::string_view lowered) const {
  return stopwords_.contains(std::string(lowered));
}

bool Lexicon::is_abbreviation(std::string_view lowered) const {
  return abbreviations_.contains(std::string(lowered));
}

const std::string* Lexicon::exception_lemma(std::string_view lowered) const {
  auto it = exceptions_.find(std::string(lowered));
  return it == exceptions_.end() ? nullptr : &it->second;
}

std::string clean_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  const auto cps = decode_with_offsets(raw);
  for (std::size_t k = 0; k < cps.size(); ++k) {
    const char32_t c = cps[k].cp;
    if (c == '\r') {
      if (k + 1 < cps.size() && cps[k + 1].cp == '\n') continue;
      out.push_back('\n');
      continue;
    }
    if (c == '\t' || c == '\n') {
      out.push_back(static_cast<char>(c));
      continue;
    }
    if (c < 0x20 || c == 0x7F || (c >= 0x80 && c < 0xA0)) continue;
    if (c == 0x200B || c == 0x200C || c == 0x200D || c == 0x2060 || c == 0xFEFF) continue;
    if (c == 0xFFFD && cps[k].length == 1) continue;  // invalid byte
    out.append(raw.substr(cps[k].offset, cps[k].length));
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text, const Lexicon& lexicon) {
  std::vector<Token> tokens;
  const auto cps = decode_with_offsets(text);
  const std::size_t n = cps.size();
  const auto emit = [&](std::size_t from, std::size_t to) {
    const std::size_t start = cps[from].offset;
    const std::size_t end = cps[to - 1].offset + cps[to - 1].length;
    tokens.push_back(Token{std::string(text.substr(start, end - start)), start, end, {}, false});
  };

  std::size_t p = 0;
  while (p < n) {
    if (is_space(cps[p].cp)) {
      ++p;
      continue;
    }
    std::size_t chunk_end = p;
    while (chunk_end < n && !is_space(cps[chunk_end].cp)) ++chunk_end;

    while (p < chunk_end) {
      const char32_t c = cps[p].cp;
      if (!is_word_char(c)) {
        std::size_t q = p + 1;
        while (q < chunk_end && cps[q].cp == c) ++q;
        emit(p, q);
        p = q;
        continue;
      }
      // Dotted abbreviation: two or more single letters each followed by '.'.
      {
        std::size_t q = p;
        int reps = 0;
        while (q + 1 < chunk_end && is_ascii_letter(cps[q].cp) && cps[q + 1].cp == '.') {
          q += 2;
          ++reps;
        }
        if (reps >= 2 && (q == chunk_end || !is_word_char(cps[q].cp))) {
          emit(p, q);
          p = q;
          continue;
        }
      }
      std::size_t q = p + 1;
      while (q < chunk_end) {
        const char32_t d = cps[q].cp;
        if (is_word_char(d)) {
          ++q;
        } else if (is_apostrophe(d) && q + 1 < chunk_end && is_word_char(cps[q + 1].cp)) {
          q += 2;
        } else if ((d == '.' || d == ',') && is_digit(cps[q - 1].cp) && q + 1 < chunk_end &&
                   is_digit(cps[q + 1].cp)) {
          q += 2;
        } else {
          break;
        }
      }
      if (q < chunk_end && cps[q].cp == '.') {
        const std::size_t start = cps[p].offset;
        const std::string candidate = ascii_lower(text.substr(start, cps[q].offset + 1 - start));
        if (lexicon.is_abbreviation(candidate)) ++q;
      }
      emit(p, q);
      p = q;
    }
  }
  return tokens;
}

std::vector<TokenRange> split_sentences(std::span<const Token> tokens) {
  std::vector<TokenRange> out;
  const std::size_t n = tokens.size();
  std::size_t begin = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_terminal(tokens[i].surface)) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < n && (is_terminal(tokens[end].surface) ||
                       (is_closer(tokens[end].surface) &&
                        tokens[end].char_start == tokens[end - 1].char_end)))
      ++end;
    bool boundary = end == n;
    if (!boundary) {
      const Token& next = tokens[end];
      if (is_upper_start(first_code_point(next.surface))) {
        boundary = true;
      } else if (is_opener(next.surface) && end + 1 < n &&
                 is_upper_start(first_code_point(tokens[end + 1].surface))) {
        boundary = true;
      }
    }
    if (boundary) {
      out.push_back({begin, end});
      begin = end;
    }
    i = end;
  }
  if (begin < n) out.push_back({begin, n});
  return out;
}

std::string lemmatize(std::string_view surface, const Lexicon& lexicon) {
  std::string w = ascii_lower(surface);
  if (const std::string* lemma = lexicon.exception_lemma(w)) return *lemma;
  if (lexicon.is_stopword(w)) return w;
  if (!std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; })) return w;
  const std::size_t n = w.size();

  if (n > 4 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
  if (ends_with(w, "sses")) return w.substr(0, n - 2);
  if (n > 4 && (ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") ||
                ends_with(w, "zzes")))
    return w.substr(0, n - 2);
  if (n > 3 && w.back() == 's' && !ends_with(w, "ss") && !ends_with(w, "us") &&
      !ends_with(w, "is"))
    return w.substr(0, n - 1);
  if (n > 4 && ends_with(w, "ied")) return w.substr(0, n - 3) + "y";
  if (ends_with(w, "eed")) return w;
  if (n > 4 && ends_with(w, "ed")) return restore_stem(w.substr(0, n - 2));
  if (n > 5 && ends_with(w, "ing")) return restore_stem(w.substr(0, n - 3));
  if (n > 5 && ends_with(w, "iest")) return w.substr(0, n - 4) + "y";
  if (n > 6 && ends_with(w, "est") && w[n - 4] == w[n - 5] && is_consonant(w[n - 4]))
    return w.substr(0, n - 4);
  return w;
}

bool has_word_char(std::string_view text) { return has_alnum(text); }

bool is_content_word(const Token& token, const Lexicon& lexicon) {
  if (!has_alnum(token.surface)) return false;
  const std::string lemma = token.lemma.empty() ? lemmatize(token.surface, lexicon) : token.lemma;
  return !lexicon.is_stopword(lemma);
}

void annotate(std::span<Token> tokens, const Lexicon& lexicon) {
  for (Token& t : tokens) {
    t.lemma = lemmatize(t.surface, lexicon);
    t.is_content = is_content_word(t, lexicon);
  }
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  for (const auto& c : decode_with_offsets(text)) out.push_back(c.cp);
  return out;
}

namespace {

struct Block {
  std::size_t i, j, size;
};

// Longest common block of a[alo:ahi] and b[blo:bhi]; ties go to the
// smallest i, then the smallest j.
Block longest_match(const std::u32string& a, const std::u32string& b, std::size_t alo,
                    std::size_t ahi, std::size_t blo, std::size_t bhi,
                    std::vector<std::size_t>& prev, std::vector<std::size_t>& cur) {
  Block best{alo, blo, 0};
  std::fill(prev.begin() + blo, prev.begin() + bhi + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    cur[blo] = 0;
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t k = a[i] == b[j] ? prev[j] + 1 : 0;
      cur[j + 1] = k;
      if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

double lemma_similarity(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  const std::u32string x = decode_utf8(a);
  const std::u32string y = decode_utf8(b);
  const std::size_t total = x.size() + y.size();
  if (total == 0) return 1.0;
  // prev/cur are indexed by j+1 over b.
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  std::size_t matched = 0;
  std::vector<std::array<std::size_t, 4>> queue{{0, x.size(), 0, y.size()}};
  while (!queue.empty()) {
    const auto [alo, ahi, blo, bhi] = queue.back();
    queue.pop_back();
    const Block m = longest_match(x, y, alo, ahi, blo, bhi, prev, cur);
    if (m.size == 0) continue;
    matched += m.size;
    if (alo < m.i && blo < m.j) queue.push_back({alo, m.i, blo, m.j});
    if (m.i + m.size < ahi && m.j + m.size < bhi)
      queue.push_back({m.i + m.size, ahi, m.j + m.size, bhi});
  }
  return 2.0 * static_cast<double>(matched) / static_cast<double>(total);
}

std::size_t RelationMatrix::count_ones() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

RelationMatrix relation_matrix(std::span<const Token> summary, std::span<const Token> document,
                               double threshold) {
  return kernels::omp::relation_matrix(summary, document, threshold);
}

std::vector<SentenceRange> segment_paragraphs(const Document& doc, std::size_t cap) {
  if (cap == 0) throw ValidationError("paragraph cap must be positive");
  std::vector<SentenceRange> out;
  const std::size_t count = doc.sentences.size();
  if (count == 0) return out;

  std::vector<std::unordered_set<std::string>> lemmas(count);
  for (std::size_t s = 0; s < count; ++s)
    for (std::size_t t = doc.sentences[s].begin; t < doc.sentences[s].end; ++t)
      if (doc.tokens[t].is_content) lemmas[s].insert(doc.tokens[t].lemma);

  const auto shares = [&](std::size_t a, std::size_t b) {
    return std::any_of(lemmas[a].begin(), lemmas[a].end(),
                       [&](const std::string& l) { return lemmas[b].contains(l); });
  };

  std::size_t begin = 0;
  for (std::size_t s = 1; s < count; ++s) {
    if (s - begin >= cap || !shares(s - 1, s)) {
      out.push_back({begin, s});
      begin = s;
    }
  }
  out.push_back({begin, count});
  return out;
}

std::vector<bool> bold_mask(const Document& doc, const Document& summary,
                            const RelationMatrix& matrix, std::size_t sentence) {
  if (sentence >= summary.sentences.size())
    throw ValidationError("summary sentence " + std::to_string(sentence) + " out of range (" +
                          std::to_string(summary.sentences.size()) + " sentences)");
  if (matrix.rows() != summary.tokens.size() || matrix.cols() != doc.tokens.size())
    throw ValidationError("relation matrix shape does not match the pair");
  std::vector<bool> mask(doc.tokens.size(), false);
  const TokenRange rows = summary.sentences[sentence];
  for (std::size_t j = 0; j < doc.tokens.size(); ++j) {
    if (!doc.tokens[j].is_content) continue;
    for (std::size_t i = rows.begin; i < rows.end; ++i) {
      if (matrix.at(i, j)) {
        mask[j] = true;
        break;
      }
    }
  }
  return mask;
}

Document preprocess(std::string id, std::string_view raw, const Lexicon& lexicon) {
  Document doc;
  doc.id = std::move(id);
  doc.raw_text = clean_text(raw);
  doc.tokens = tokenize(doc.raw_text, lexicon);
  annotate(doc.tokens, lexicon);
  doc.sentences = split_sentences(doc.tokens);
  doc.paragraphs = segment_paragraphs(doc);
  return doc;
}

}  // namespace ctr::textproc
