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

#include "ctr/corpus_json.hpp"

#include <string>

#include "ctr/error.hpp"

namespace ctr {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field))
    throw ValidationError(std::string("missing field \"") + field + "\"");
  return j.at(field);
}

template <class Range>
json ranges_to_json(const std::vector<Range>& ranges) {
  json out = json::array();
  for (const auto& r : ranges) out.push_back({r.begin, r.end});
  return out;
}

template <class Range>
std::vector<Range> ranges_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw ValidationError(std::string("\"") + field + "\" must be an array");
  std::vector<Range> out;
  for (const auto& r : j) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_unsigned() || !r[1].is_number_unsigned())
      throw ValidationError(std::string("\"") + field + "\" entries must be [begin, end]");
    out.push_back({r[0].get<std::size_t>(), r[1].get<std::size_t>()});
  }
  return out;
}

}  // namespace

json to_json(const Document& doc) {
  json tokens = json::array();
  for (const Token& t : doc.tokens)
    tokens.push_back({{"text", t.surface},
                      {"start", t.char_start},
                      {"end", t.char_end},
                      {"lemma", t.lemma},
                      {"content", t.is_content}});
  return {{"id", doc.id},
          {"raw_text", doc.raw_text},
          {"tokens", std::move(tokens)},
          {"sentences", ranges_to_json(doc.sentences)},
          {"paragraphs", ranges_to_json(doc.paragraphs)}};
}

Document document_from_json(const json& j) {
  Document doc;
  doc.id = require(j, "id").get<std::string>();
  doc.raw_text = require(j, "raw_text").get<std::string>();
  const json& tokens = require(j, "tokens");
  if (!tokens.is_array()) throw ValidationError("\"tokens\" must be an array");
  doc.tokens.reserve(tokens.size());
  for (const json& t : tokens) {
    doc.tokens.push_back(Token{require(t, "text").get<std::string>(),
                               require(t, "start").get<std::size_t>(),
                               require(t, "end").get<std::size_t>(),
                               require(t, "lemma").get<std::string>(),
                               require(t, "content").get<bool>()});
  }
  doc.sentences = ranges_from_json<TokenRange>(require(j, "sentences"), "sentences");
  doc.paragraphs = ranges_from_json<SentenceRange>(require(j, "paragraphs"), "paragraphs");
  validate_document(doc);
  return doc;
}

json spans_to_json(std::span<const Span> spans) {
  json out = json::array();
  for (const Span& s : spans) out.push_back({s.token_start, s.token_end});
  return out;
}

std::vector<Span> spans_from_json(const json& j, const std::string& text_id) {
  std::vector<Span> out;
  for (const auto& r : ranges_from_json<TokenRange>(j, "spans"))
    out.push_back(Span{text_id, r.begin, r.end});
  return out;
}

json to_json(const Alignment& a) {
  json out = {{"summary_spans", spans_to_json(a.summary_spans)},
              {"document_spans", spans_to_json(a.document_spans)},
              {"annotator_id", a.annotator_id}};
  if (a.score) out["score"] = *a.score;
  return out;
}

Alignment alignment_from_json(const json& j, const std::string& summary_id,
                              const std::string& document_id) {
  Alignment a;
  a.summary_spans = spans_from_json(require(j, "summary_spans"), summary_id);
  a.document_spans = spans_from_json(require(j, "document_spans"), document_id);
  a.annotator_id = j.value("annotator_id", std::string{});
  if (j.contains("score") && !j["score"].is_null()) {
    if (!j["score"].is_number()) throw ValidationError("\"score\" must be a number");
    a.score = j["score"].get<double>();
  }
  return a;
}

json to_json(const DocumentSummaryPair& pair) {
  json alignments = json::array();
  for (const Alignment& a : pair.alignments) alignments.push_back(to_json(a));
  return {{"format_version", kFormatVersion},
          {"id", pair.id},
          {"provenance", std::string(to_string(pair.provenance))},
          {"flags", pair.flags},
          {"document", to_json(pair.document)},
          {"summary", to_json(pair.summary)},
          {"alignments", std::move(alignments)}};
}

DocumentSummaryPair pair_from_json(const json& j) {
  const int version = require(j, "format_version").get<int>();
  if (version != kFormatVersion)
    throw ValidationError("unsupported format_version " + std::to_string(version));
  DocumentSummaryPair pair;
  pair.id = require(j, "id").get<std::string>();
  pair.provenance = provenance_from_string(require(j, "provenance").get<std::string>());
  if (j.contains("flags")) pair.flags = j["flags"].get<std::vector<std::string>>();
  pair.document = document_from_json(require(j, "document"));
  pair.summary = document_from_json(require(j, "summary"));
  for (const json& a : require(j, "alignments")) {
    pair.alignments.push_back(alignment_from_json(a, pair.summary.id, pair.document.id));
    validate_alignment(pair, pair.alignments.back());
  }
  return pair;
}

}  // namespace ctr
