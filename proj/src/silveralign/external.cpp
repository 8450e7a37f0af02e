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

#include <httplib.h>

#include <string>
#include <thread>

#include "ctr/corpus_json.hpp"
#include "ctr/error.hpp"
#include "ctr/silveralign.hpp"

namespace ctr::silveralign {

using nlohmann::json;

namespace {

json offsets(const Document& text) {
  json out = json::array();
  for (const Token& t : text.tokens) out.push_back({t.char_start, t.char_end});
  return out;
}

std::vector<Span> parse_spans(const json& j, const Document& text, std::size_t index,
                              const char* field) {
  const std::string where = "candidate " + std::to_string(index) + ": ";
  if (!j.is_array() || j.empty())
    throw ValidationError(where + "\"" + field + "\" must be a non-empty array");
  std::vector<Span> spans;
  for (const json& r : j) {
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_unsigned() || !r[1].is_number_unsigned())
      throw ValidationError(where + "\"" + field + "\" entries must be [start, end]");
    const auto b = r[0].get<std::size_t>();
    const auto e = r[1].get<std::size_t>();
    if (b >= e || e > text.tokens.size())
      throw ValidationError(where + "\"" + field + "\" span [" + std::to_string(b) + "," +
                            std::to_string(e) + ") is outside [0," +
                            std::to_string(text.tokens.size()) + ")");
    spans.push_back(Span{text.id, b, e});
  }
  return canonicalize(spans);
}

PropositionSpan as_proposition(std::vector<Span> spans, const Document& text) {
  PropositionSpan p;
  p.head_token = spans.front().token_start;
  p.sentence_index = text.sentence_of(p.head_token);
  p.spans = std::move(spans);
  return p;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos || url.compare(0, scheme, "http") != 0)
    throw ValidationError("aligner endpoint must be an http:// URL, got '" + url + "'");
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::vector<AlignmentCandidate> attempt(const DocumentSummaryPair& pair,
                                        const ExternalConfig& config, const Endpoint& endpoint,
                                        const std::string& body) {
  httplib::Client client(endpoint.origin);
  const auto ms = config.timeout.count();
  client.set_connection_timeout(ms / 1000, (ms % 1000) * 1000);
  client.set_read_timeout(ms / 1000, (ms % 1000) * 1000);
  client.set_write_timeout(ms / 1000, (ms % 1000) * 1000);
  auto res = client.Post(endpoint.path, body, "application/json");
  if (!res)
    throw ServiceError("aligner request for pair '" + pair.id + "' failed: " +
                           httplib::to_string(res.error()),
                       true);
  if (res->status >= 500)
    throw ServiceError("aligner returned HTTP " + std::to_string(res->status), true);
  if (res->status != 200)
    throw ServiceError("aligner returned HTTP " + std::to_string(res->status) + ": " + res->body,
                       false);
  json parsed;
  try {
    parsed = json::parse(res->body);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("aligner response is not JSON: ") + e.what());
  }
  return parse_external_response(parsed, pair);
}

}  // namespace

json external_request(const DocumentSummaryPair& pair) {
  return {{"document_text", pair.document.raw_text},
          {"summary_text", pair.summary.raw_text},
          {"doc_token_offsets", offsets(pair.document)},
          {"summary_token_offsets", offsets(pair.summary)}};
}

std::vector<AlignmentCandidate> parse_external_response(const json& response,
                                                        const DocumentSummaryPair& pair) {
  if (!response.is_object() || !response.contains("candidates") ||
      !response["candidates"].is_array())
    throw ValidationError("aligner response needs a \"candidates\" array");
  std::vector<AlignmentCandidate> out;
  std::size_t index = 0;
  for (const json& c : response["candidates"]) {
    if (!c.is_object()) throw ValidationError("candidate " + std::to_string(index) + ": not an object");
    if (!c.contains("score") || !c["score"].is_number())
      throw ValidationError("candidate " + std::to_string(index) + ": missing numeric \"score\"");
    const double score = c["score"].get<double>();
    if (!(score >= 0.0 && score <= 1.0))
      throw ValidationError("candidate " + std::to_string(index) + ": score " +
                            std::to_string(score) + " outside [0, 1]");
    AlignmentCandidate cand;
    cand.summary_prop = as_proposition(
        parse_spans(c.value("summary_spans", json()), pair.summary, index, "summary_spans"),
        pair.summary);
    cand.doc_prop = as_proposition(
        parse_spans(c.value("doc_spans", json()), pair.document, index, "doc_spans"),
        pair.document);
    cand.score = score;
    out.push_back(std::move(cand));
    ++index;
  }
  return out;
}

std::vector<AlignmentCandidate> external_align(const DocumentSummaryPair& pair,
                                               const ExternalConfig& config) {
  const Endpoint endpoint = split_endpoint(config.endpoint);
  const std::string body = external_request(pair).dump();
  const int attempts = std::max(1, config.retries + 1);
  std::string last_error;
  for (int k = 0; k < attempts; ++k) {
    try {
      return attempt(pair, config, endpoint, body);
    } catch (const ServiceError& e) {
      if (!e.retryable()) throw;
      last_error = e.what();
    }
    if (k + 1 < attempts) std::this_thread::sleep_for(config.backoff * (1 << k));
  }
  throw ServiceError("aligner unreachable after " + std::to_string(attempts) +
                         " attempts: " + last_error,
                     true);
}

}  // namespace ctr::silveralign
