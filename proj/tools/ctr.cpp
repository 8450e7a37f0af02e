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

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ctr/appserver.hpp"
#include "ctr/corpus.hpp"
#include "ctr/evalsuite.hpp"
#include "ctr/modelio.hpp"
#include "ctr/silveralign.hpp"

namespace {

using nlohmann::json;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw ctr::IoError("cannot write " + path);
}

std::vector<std::pair<std::string, std::string>> load_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ctr::IoError("cannot read " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      out.emplace_back(j.at("pair_id").get<std::string>(), j.at("text").get<std::string>());
    } catch (const json::exception& e) {
      throw ctr::ParseError(path + ": " + e.what(), n);
    }
  }
  return out;
}

ctr::app::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled text reduction toolkit"};
  app.require_subcommand(1);

  std::string stopwords, exceptions;
  app.add_option("--stopwords", stopwords, "Stopword list overriding the built-in one")
      ->check(CLI::ExistingFile);
  app.add_option("--lemma-exceptions", exceptions, "Lemma exception table (surface<TAB>lemma)")
      ->check(CLI::ExistingFile);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Build a corpus file from raw pairs");
  std::string ingest_path, ingest_format = "pair-lines", ingest_out;
  ingest->add_option("path", ingest_path, "pair-lines file or plain-dir directory")
      ->required()
      ->check(CLI::ExistingPath);
  ingest->add_option("--format", ingest_format, "Input format")
      ->check(CLI::IsMember({"pair-lines", "plain-dir"}));
  ingest->add_option("--out,-o", ingest_out, "Output corpus file (default stdout)");

  // align
  auto* align = app.add_subcommand("align", "Add silver alignments to a corpus");
  std::string align_corpus, backend = "lexical", endpoint, align_out;
  double threshold = ctr::silveralign::kDefaultAlignThreshold;
  double lemma_threshold = ctr::textproc::kDefaultLemmaThreshold;
  int timeout_ms = 30000, retries = 3;
  align->add_option("corpus", align_corpus)->required()->check(CLI::ExistingFile);
  align->add_option("--backend", backend)->check(CLI::IsMember({"lexical", "external"}));
  align->add_option("--threshold", threshold, "Minimum alignment score")
      ->check(CLI::Range(0.0, 1.0));
  align->add_option("--lemma-threshold", lemma_threshold)->check(CLI::Range(0.0, 1.0));
  align->add_option("--endpoint", endpoint, "External aligner URL")->envname("CTR_ALIGNER_ENDPOINT");
  align->add_option("--timeout-ms", timeout_ms)->check(CLI::PositiveNumber);
  align->add_option("--retries", retries)->check(CLI::NonNegativeNumber);
  align->add_option("--out,-o", align_out);

  // stats
  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  std::string stats_corpus, stats_label = "corpus";
  bool stats_json = false;
  stats->add_option("corpus", stats_corpus)->required()->check(CLI::ExistingFile);
  stats->add_option("--label", stats_label, "Row label of the table");
  stats->add_flag("--json", stats_json, "Emit JSON instead of a table");

  // eval
  auto* eval = app.add_subcommand("eval", "Agreement and ROUGE reports");
  eval->require_subcommand(1);
  bool eval_table = false;
  eval->add_flag("--table", eval_table, "Emit an aggregate table instead of records");

  auto* iou = eval->add_subcommand("iou", "Token IoU between two annotations of the same pairs");
  std::string iou_a, iou_b;
  bool all_tokens = false;
  iou->add_option("first", iou_a)->required()->check(CLI::ExistingFile);
  iou->add_option("second", iou_b)->required()->check(CLI::ExistingFile);
  iou->add_flag("--all-tokens", all_tokens, "Count every token, not only content words");

  auto* prf = eval->add_subcommand("prf", "Token precision/recall/F1 of predicted highlights");
  std::string prf_pred, prf_gold;
  prf->add_option("predicted", prf_pred)->required()->check(CLI::ExistingFile);
  prf->add_option("gold", prf_gold)->required()->check(CLI::ExistingFile);

  auto* rouge = eval->add_subcommand("rouge", "ROUGE of generated texts");
  std::string rouge_corpus, rouge_pred, rouge_ref = "highlights";
  rouge->add_option("corpus", rouge_corpus)->required()->check(CLI::ExistingFile);
  rouge->add_option("predictions", rouge_pred, "JSONL with pair_id and text")
      ->required()
      ->check(CLI::ExistingFile);
  rouge->add_option("--reference", rouge_ref)->check(CLI::IsMember({"highlights", "summary"}));

  // encode
  auto* encode = app.add_subcommand("encode", "Emit model-input records");
  std::string encode_corpus, encode_mode = "markers", encode_out;
  std::size_t max_len = ctr::modelio::kDefaultMaxLen;
  encode->add_option("corpus", encode_corpus)->required()->check(CLI::ExistingFile);
  encode->add_option("--mode", encode_mode)->check(CLI::IsMember({"markers", "concat"}));
  encode->add_option("--max-len", max_len)->check(CLI::PositiveNumber);
  encode->add_option("--out,-o", encode_out);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  int port = 8080;
  std::string host = "127.0.0.1", data, logs, static_dir, serve_endpoint;
  bool single_annotator = false;
  serve->add_option("--port", port)->envname("CTR_PORT")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host);
  serve->add_option("--data", data, "Corpus file")->envname("CTR_DATA")->required()->check(
      CLI::ExistingFile);
  serve->add_option("--logs", logs, "Event log directory (default <data>.logs)");
  serve->add_option("--static", static_dir, "UI assets directory")
      ->envname("CTR_STATIC_DIR")
      ->check(CLI::ExistingDirectory);
  serve->add_option("--endpoint", serve_endpoint, "External aligner URL for suggestions")
      ->envname("CTR_ALIGNER_ENDPOINT");
  serve->add_flag("--single-annotator", single_annotator, "Allow one annotator per pair");

  // export
  auto* exp = app.add_subcommand("export", "Compact event logs into a corpus file");
  std::string export_data, export_logs, export_out;
  exp->add_option("--data", export_data)->envname("CTR_DATA")->required()->check(CLI::ExistingFile);
  exp->add_option("--logs", export_logs, "Event log directory (default <data>.logs)");
  exp->add_option("--out,-o", export_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const ctr::textproc::Lexicon* lexicon = &ctr::textproc::Lexicon::builtin();
    std::optional<ctr::textproc::Lexicon> custom;
    if (!stopwords.empty() || !exceptions.empty()) {
      if (stopwords.empty() || exceptions.empty())
        throw CLI::ValidationError("--stopwords and --lemma-exceptions must be given together");
      custom = ctr::textproc::Lexicon::load(stopwords, exceptions);
      lexicon = &*custom;
    }

    if (*ingest) {
      const auto corpus =
          ctr::ingest(ingest_path, ctr::ingest_format_from_string(ingest_format), *lexicon);
      write_output(ingest_out, ctr::serialize(corpus));
    } else if (*align) {
      const auto corpus = ctr::load(align_corpus);
      std::unique_ptr<ctr::silveralign::Backend> b;
      if (backend == "external") {
        if (endpoint.empty())
          throw CLI::ValidationError("--endpoint", "required with --backend external");
        ctr::silveralign::ExternalConfig cfg;
        cfg.endpoint = endpoint;
        cfg.timeout = std::chrono::milliseconds(timeout_ms);
        cfg.retries = retries;
        b = std::make_unique<ctr::silveralign::ExternalBackend>(cfg);
      } else {
        b = std::make_unique<ctr::silveralign::LexicalBackend>(lemma_threshold);
      }
      const auto aligned = ctr::silveralign::align_corpus(corpus, *b, threshold);
      std::size_t uncovered = 0;
      for (const auto& p : aligned.pairs) uncovered += p.has_flag("uncovered");
      if (uncovered) std::cerr << "warning: " << uncovered << " pair(s) left uncovered\n";
      write_output(align_out, ctr::serialize(aligned));
    } else if (*stats) {
      const auto report = ctr::eval::dataset_stats(ctr::load(stats_corpus));
      write_output("", stats_json ? ctr::eval::to_json(report).dump(2) + "\n"
                                  : ctr::eval::stats_table(report, stats_label));
    } else if (*iou) {
      const auto report = ctr::eval::corpus_iou(ctr::load(iou_a), ctr::load(iou_b), !all_tokens);
      for (const auto& d : report.diagnostics) std::cerr << "warning: " << d << '\n';
      write_output("", eval_table ? ctr::eval::iou_table(report) : ctr::eval::iou_records(report));
    } else if (*prf) {
      const auto report = ctr::eval::highlight_prf(ctr::load(prf_pred), ctr::load(prf_gold));
      for (const auto& d : report.diagnostics) std::cerr << "warning: " << d << '\n';
      write_output("", eval_table ? ctr::eval::prf_table(report) : ctr::eval::prf_records(report));
    } else if (*rouge) {
      const auto predictions = load_predictions(rouge_pred);
      const auto report = ctr::eval::corpus_rouge(
          ctr::load(rouge_corpus), predictions,
          rouge_ref == "summary" ? ctr::eval::RougeReference::kSummary
                                 : ctr::eval::RougeReference::kHighlights);
      for (const auto& d : report.diagnostics) std::cerr << "warning: " << d << '\n';
      write_output("",
                   eval_table ? ctr::eval::rouge_table(report) : ctr::eval::rouge_records(report));
    } else if (*encode) {
      const auto corpus = ctr::load(encode_corpus);
      const auto mode = ctr::modelio::mode_from_string(encode_mode);
      std::string out;
      std::size_t skipped = 0, dropped = 0;
      for (const auto& pair : corpus.pairs) {
        if (pair.alignments.empty()) {
          ++skipped;
          continue;
        }
        const auto rec = ctr::modelio::export_record(pair, ctr::highlights_of(pair), mode, max_len);
        dropped += rec.dropped_spans;
        out += rec.record.dump() + "\n";
      }
      if (skipped) std::cerr << "warning: skipped " << skipped << " pair(s) without alignments\n";
      if (dropped) std::cerr << "warning: dropped " << dropped << " span(s) past --max-len\n";
      write_output(encode_out, out);
    } else if (*serve) {
      ctr::app::StoreOptions so;
      so.log_dir = logs.empty() ? ctr::app::default_log_dir(data) : std::filesystem::path(logs);
      so.single_annotator = single_annotator;
      ctr::app::Store store(ctr::load(data), so);
      ctr::app::ServerOptions opts;
      opts.static_dir = static_dir;
      if (!serve_endpoint.empty()) {
        ctr::silveralign::ExternalConfig cfg;
        cfg.endpoint = serve_endpoint;
        opts.aligner = std::make_shared<ctr::silveralign::ExternalBackend>(cfg);
      }
      ctr::app::Server server(store, opts);
      if (!server.bind(host, port)) throw ctr::IoError("cannot bind " + host + ":" + std::to_string(port));
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving " << store.corpus().pairs.size() << " pair(s) on http://" << host << ':'
                << server.port() << " (logs in " << so.log_dir.string() << ")\n";
      server.listen();
      g_server = nullptr;
    } else if (*exp) {
      ctr::app::StoreOptions so;
      so.log_dir = export_logs.empty() ? ctr::app::default_log_dir(export_data)
                                       : std::filesystem::path(export_logs);
      ctr::app::Store store(ctr::load(export_data), so);
      write_output(export_out, ctr::serialize(store.export_corpus()));
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
