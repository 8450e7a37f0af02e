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

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ctr/evalsuite.hpp"

namespace ctr::eval {

using nlohmann::json;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

namespace {

std::string fixed2(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(2) << round2(v);
  return ss.str();
}

// Renders rows as a '|'-separated table with padded columns.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << '|';
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      out << ' ' << std::left << std::setw(static_cast<int>(width[c])) << rows[r][c] << " |";
    out << '\n';
    if (r == 0) {
      out << '|';
      for (std::size_t w : width) out << std::string(w + 2, '-') << '|';
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace

json to_json(const Prf& p) {
  return {{"P", round2(p.precision)}, {"R", round2(p.recall)}, {"F1", round2(p.f1)}};
}

json to_json(const RougeScore& r) {
  json j = {{"precision", round2(r.precision)}, {"recall", round2(r.recall)}, {"f", round2(r.f)}};
  if (r.degenerate) j["degenerate"] = true;
  return j;
}

json to_json(const RougeReport& r) {
  json j = {{"rouge1", to_json(r.r1)}, {"rouge2", to_json(r.r2)}, {"rougeL", to_json(r.rl)}};
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
  return j;
}

json to_json(const IouReport& r) {
  json sentences = json::array();
  for (const auto& s : r.per_sentence)
    sentences.push_back({{"summary_sentence_index", s.summary_sentence_index}, {"iou", s.iou}});
  return {{"pair_id", r.pair_id}, {"per_sentence", sentences}, {"mean_iou", r.mean_iou}};
}

json to_json(const StatsReport& r) {
  return {{"unique_docs", r.unique_docs},
          {"pair_count", r.pair_count},
          {"mean_summaries_per_doc", round2(r.mean_summaries_per_doc)},
          {"mean_input_tokens", round2(r.mean_input_tokens)},
          {"mean_output_tokens", round2(r.mean_output_tokens)},
          {"max_input_tokens", r.max_input_tokens},
          {"max_output_tokens", r.max_output_tokens},
          {"mean_input_sentences", round2(r.mean_input_sentences)},
          {"mean_output_sentences", round2(r.mean_output_sentences)},
          {"aligned_summary_sentences", r.aligned_summary_sentences},
          {"multi_sentence_alignments", r.multi_sentence_alignments},
          {"pct_multi_sentence_alignments", round2(r.pct_multi_sentence_alignments)}};
}

std::string iou_records(const CorpusIouReport& r) {
  std::string out;
  for (const auto& p : r.per_pair) out += to_json(p).dump() + "\n";
  json agg = {{"sentence_mean_iou", r.sentence_mean}, {"pair_mean_iou", r.pair_mean},
              {"pairs", r.per_pair.size()}};
  if (!r.diagnostics.empty()) agg["diagnostics"] = r.diagnostics;
  out += json{{"aggregate", agg}}.dump() + "\n";
  return out;
}

std::string prf_records(const PrfReport& r) {
  std::string out;
  for (const auto& p : r.per_pair) {
    json j = to_json(p.scores);
    j["pair_id"] = p.pair_id;
    j["tp"] = p.true_positives;
    j["fp"] = p.false_positives;
    j["fn"] = p.false_negatives;
    if (p.gold_empty) j["gold_empty"] = true;
    out += j.dump() + "\n";
  }
  json agg = {{"macro", to_json(r.macro)}, {"micro", to_json(r.micro)}, {"pairs", r.per_pair.size()}};
  if (!r.diagnostics.empty()) agg["diagnostics"] = r.diagnostics;
  out += json{{"aggregate", agg}}.dump() + "\n";
  return out;
}

std::string rouge_records(const CorpusRougeReport& r) {
  std::string out;
  for (const auto& [id, rep] : r.per_pair) {
    json j = to_json(rep);
    j["pair_id"] = id;
    out += j.dump() + "\n";
  }
  json agg = to_json(r.mean);
  agg.erase("diagnostics");
  agg["pairs"] = r.per_pair.size();
  if (!r.diagnostics.empty()) agg["diagnostics"] = r.diagnostics;
  out += json{{"aggregate", agg}}.dump() + "\n";
  return out;
}

std::string stats_table(const StatsReport& r, std::string_view row_label) {
  return table({{"", "#unique docs", "#summaries/doc (average)", "#summary-doc pairs",
                 "mean input/output size (tkns)", "max input/output size (tkns)",
                 "mean input/output size (sentences)",
                 "summary sentences aligning to multiple doc sentences"},
                {std::string(row_label), std::to_string(r.unique_docs),
                 fixed2(r.mean_summaries_per_doc), std::to_string(r.pair_count),
                 fixed2(r.mean_input_tokens) + "/" + fixed2(r.mean_output_tokens),
                 std::to_string(r.max_input_tokens) + "/" + std::to_string(r.max_output_tokens),
                 fixed2(r.mean_input_sentences) + "/" + fixed2(r.mean_output_sentences),
                 fixed2(r.pct_multi_sentence_alignments) + " %"}});
}

std::string iou_table(const CorpusIouReport& r) {
  return table({{"pairs", "sentence-level IoU", "pair-level IoU"},
                {std::to_string(r.per_pair.size()), fixed2(100.0 * r.sentence_mean),
                 fixed2(100.0 * r.pair_mean)}});
}

std::string prf_table(const PrfReport& r) {
  return table({{"", "P", "R", "F1"},
                {"macro", fixed2(r.macro.precision), fixed2(r.macro.recall), fixed2(r.macro.f1)},
                {"micro", fixed2(r.micro.precision), fixed2(r.micro.recall), fixed2(r.micro.f1)}});
}

std::string rouge_table(const CorpusRougeReport& r) {
  return table({{"", "R-1", "R-2", "R-L"},
                {"F", fixed2(r.mean.r1.f), fixed2(r.mean.r2.f), fixed2(r.mean.rl.f)},
                {"P", fixed2(r.mean.r1.precision), fixed2(r.mean.r2.precision),
                 fixed2(r.mean.rl.precision)},
                {"R", fixed2(r.mean.r1.recall), fixed2(r.mean.r2.recall), fixed2(r.mean.rl.recall)}});
}

}  // namespace ctr::eval
