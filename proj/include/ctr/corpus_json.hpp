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

#ifndef CTR_CORPUS_JSON_HPP_
#define CTR_CORPUS_JSON_HPP_

// JSON mapping of the corpus record format (docs/FORMAT.md).

#include <json.hpp>

#include "ctr/corpus.hpp"

namespace ctr {

nlohmann::json to_json(const Document& doc);
Document document_from_json(const nlohmann::json& j);

// Spans are written as [token_start, token_end]; the text id is implied by
// the field holding them, so text_id must be supplied when reading.
nlohmann::json spans_to_json(std::span<const Span> spans);
std::vector<Span> spans_from_json(const nlohmann::json& j, const std::string& text_id);

nlohmann::json to_json(const Alignment& a);
Alignment alignment_from_json(const nlohmann::json& j, const std::string& summary_id,
                              const std::string& document_id);

nlohmann::json to_json(const DocumentSummaryPair& pair);
DocumentSummaryPair pair_from_json(const nlohmann::json& j);

}  // namespace ctr

#endif  // CTR_CORPUS_JSON_HPP_
