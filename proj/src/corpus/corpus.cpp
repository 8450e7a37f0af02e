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

#include "ctr/corpus.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "ctr/corpus_json.hpp"
#include "ctr/error.hpp"

namespace ctr {

using nlohmann::json;

std::string_view to_string(Provenance p) { return p == Provenance::kManual ? "manual" : "silver"; }

Provenance provenance_from_string(std::string_view s) {
  if (s == "manual") return Provenance::kManual;
  if (s == "silver") return Provenance::kSilver;
  throw ValidationError("unknown provenance '" + std::string(s) + "'");
}

bool DocumentSummaryPair::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

const DocumentSummaryPair* Corpus::find(std::string_view id) const {
  for (const auto& p : pairs)
    if (p.id == id) return &p;
  return nullptr;
}

std::vector<Span> canonicalize(std::span<const Span> spans) {
  std::vector<Span> sorted(spans.begin(), spans.end());
  for (const Span& s : sorted) {
    if (s.text_id != sorted.front().text_id)
      throw ValidationError("cannot merge spans over different texts '" + s.text_id + "' and '" +
                            sorted.front().text_id + "'");
    if (s.token_start >= s.token_end)
      throw ValidationError("empty span [" + std::to_string(s.token_start) + "," +
                            std::to_string(s.token_end) + ")");
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<Span> out;
  for (Span& s : sorted) {
    if (!out.empty() && s.token_start <= out.back().token_end)
      out.back().token_end = std::max(out.back().token_end, s.token_end);
    else
      out.push_back(std::move(s));
  }
  return out;
}

bool is_canonical(std::span<const Span> spans) {
  for (std::size_t k = 0; k < spans.size(); ++k) {
    if (spans[k].token_start >= spans[k].token_end) return false;
    if (k > 0 && (spans[k].text_id != spans[0].text_id ||
                  spans[k].token_start <= spans[k - 1].token_end))
      return false;
  }
  return true;
}

HighlightSet HighlightSet::canonical(std::string pair_id, std::span<const Span> spans) {
  return HighlightSet{std::move(pair_id), canonicalize(spans)};
}

std::size_t HighlightSet::token_count() const {
  std::size_t n = 0;
  for (const Span& s : spans) n += s.size();
  return n;
}

std::vector<std::size_t> HighlightSet::token_indices() const {
  std::vector<std::size_t> out;
  out.reserve(token_count());
  for (const Span& s : spans)
    for (std::size_t t = s.token_start; t < s.token_end; ++t) out.push_back(t);
  return out;
}

HighlightSet highlights_of(const DocumentSummaryPair& pair) {
  if (pair.alignments.empty())
    throw ValidationError("pair '" + pair.id + "' has no alignments to build highlights from");
  std::vector<Span> all;
  for (const Alignment& a : pair.alignments)
    all.insert(all.end(), a.document_spans.begin(), a.document_spans.end());
  return HighlightSet::canonical(pair.id, all);
}

void validate_alignment(const DocumentSummaryPair& pair, const Alignment& alignment) {
  const auto check = [](const std::vector<Span>& spans, const Document& text,
                        const char* field) {
    if (spans.empty()) throw ValidationError(std::string(field) + " must not be empty");
    for (std::size_t k = 0; k < spans.size(); ++k) {
      const Span& s = spans[k];
      const std::string where = std::string(field) + "[" + std::to_string(k) + "]";
      if (s.text_id != text.id)
        throw ValidationError(where + " references text '" + s.text_id + "', expected '" +
                              text.id + "'");
      if (s.token_start >= s.token_end || s.token_end > text.tokens.size())
        throw ValidationError(where + " = [" + std::to_string(s.token_start) + "," +
                              std::to_string(s.token_end) + ") is outside [0," +
                              std::to_string(text.tokens.size()) + ")");
    }
  };
  check(alignment.summary_spans, pair.summary, "summary_spans");
  check(alignment.document_spans, pair.document, "document_spans");
  if (alignment.score && !(*alignment.score >= 0.0 && *alignment.score <= 1.0))
    throw ValidationError("alignment score must lie in [0, 1]");
}

std::string content_hash(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < 8 && k < len; ++k) {
    out.push_back(kHex[digest[k] >> 4]);
    out.push_back(kHex[digest[k] & 0xF]);
  }
  return out;
}

std::string document_id_for(std::string_view raw_document) {
  return "d" + content_hash(textproc::clean_text(raw_document));
}

std::string summary_id_for(std::string_view raw_summary) {
  return "s" + content_hash(textproc::clean_text(raw_summary));
}

std::string pair_id_for(std::string_view raw_document, std::string_view raw_summary) {
  std::string joined = textproc::clean_text(raw_document);
  joined.push_back('\x1f');
  joined += textproc::clean_text(raw_summary);
  return "p" + content_hash(joined);
}

DocumentSummaryPair make_pair(std::string_view raw_document, std::string_view raw_summary,
                              std::string pair_id, const textproc::Lexicon& lexicon) {
  DocumentSummaryPair pair;
  pair.id = pair_id.empty() ? pair_id_for(raw_document, raw_summary) : std::move(pair_id);
  pair.document = textproc::preprocess(document_id_for(raw_document), raw_document, lexicon);
  pair.summary = textproc::preprocess(summary_id_for(raw_summary), raw_summary, lexicon);
  return pair;
}

IngestFormat ingest_format_from_string(std::string_view s) {
  if (s == "pair-lines") return IngestFormat::kPairLines;
  if (s == "plain-dir") return IngestFormat::kPlainDir;
  throw ValidationError("unknown ingest format '" + std::string(s) +
                        "' (expected pair-lines or plain-dir)");
}

namespace {

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Corpus ingest_pair_lines(const std::filesystem::path& path, const textproc::Lexicon& lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!record.is_object()) throw ParseError("record must be a JSON object", line_no);
    for (const char* field : {"document", "summary"})
      if (!record.contains(field) || !record[field].is_string())
        throw ParseError(std::string("missing string field \"") + field + "\"", line_no);
    std::string id;
    if (record.contains("id")) {
      if (!record["id"].is_string() || record["id"].get<std::string>().empty())
        throw ParseError("\"id\" must be a non-empty string", line_no);
      id = record["id"].get<std::string>();
    }
    DocumentSummaryPair pair = make_pair(record["document"].get<std::string>(),
                                         record["summary"].get<std::string>(), id, lexicon);
    if (record.contains("provenance")) {
      try {
        pair.provenance = provenance_from_string(record["provenance"].get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError(e.what(), line_no);
      }
    }
    if (!seen.insert(pair.id).second) throw ParseError("duplicate pair id '" + pair.id + "'", line_no);
    corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

Corpus ingest_plain_dir(const std::filesystem::path& dir, const textproc::Lexicon& lexicon) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  std::map<std::string, fs::path> documents;
  std::map<std::string, std::vector<fs::path>> summaries;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    static constexpr std::string_view kDoc = ".document.txt";
    if (name.size() > kDoc.size() && name.ends_with(kDoc)) {
      documents[name.substr(0, name.size() - kDoc.size())] = entry.path();
      continue;
    }
    const auto pos = name.find(".summary");
    if (pos != std::string::npos && pos > 0 && name.ends_with(".txt"))
      summaries[name.substr(0, pos)].push_back(entry.path());
  }
  for (const auto& [stem, paths] : summaries)
    if (!documents.contains(stem))
      throw IoError("summary " + paths.front().string() + " has no matching " + stem +
                    ".document.txt");
  Corpus corpus;
  std::unordered_set<std::string> seen;
  for (const auto& [stem, doc_path] : documents) {
    auto it = summaries.find(stem);
    if (it == summaries.end()) throw IoError("document " + doc_path.string() + " has no summary");
    std::sort(it->second.begin(), it->second.end());
    const std::string doc_text = read_all(doc_path);
    for (const auto& sum_path : it->second) {
      DocumentSummaryPair pair = make_pair(doc_text, read_all(sum_path), {}, lexicon);
      if (!seen.insert(pair.id).second)
        throw ParseError("duplicate pair id '" + pair.id + "' from " + sum_path.string(), 0);
      corpus.pairs.push_back(std::move(pair));
    }
  }
  return corpus;
}

}  // namespace

Corpus ingest(const std::filesystem::path& path, IngestFormat format,
              const textproc::Lexicon& lexicon) {
  if (!std::filesystem::exists(path)) throw IoError(path.string() + " does not exist");
  return format == IngestFormat::kPairLines ? ingest_pair_lines(path, lexicon)
                                            : ingest_plain_dir(path, lexicon);
}

std::string serialize(const Corpus& corpus) {
  std::string out;
  for (const auto& pair : corpus.pairs) {
    out += to_json(pair).dump();
    out.push_back('\n');
  }
  return out;
}

void save(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << serialize(corpus);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

Corpus deserialize(std::string_view text) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      DocumentSummaryPair pair = pair_from_json(json::parse(line));
      if (!seen.insert(pair.id).second) throw ValidationError("duplicate pair id '" + pair.id + "'");
      corpus.pairs.push_back(std::move(pair));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return corpus;
}

Corpus load(const std::filesystem::path& path) {
  try {
    return deserialize(read_all(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

}  // namespace ctr
