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

#include <algorithm>
#include <fstream>

#include "ctr/appserver.hpp"
#include "ctr/corpus_json.hpp"
#include "ctr/textproc.hpp"

namespace ctr::app {

using nlohmann::json;

std::string_view to_string(Status s) {
  return s == Status::kComplete ? "complete" : "in_progress";
}

namespace {

std::string required_string(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string() || j[key].get<std::string>().empty())
    throw ValidationError(std::string("\"") + key + "\" must be a non-empty string");
  return j[key].get<std::string>();
}

std::string_view type_name(EventType t) {
  switch (t) {
    case EventType::kSave: return "save";
    case EventType::kDelete: return "delete";
    case EventType::kAdvance: return "advance";
    case EventType::kComplete: return "complete";
  }
  return "";
}

EventType type_from_string(std::string_view s) {
  if (s == "save") return EventType::kSave;
  if (s == "delete") return EventType::kDelete;
  if (s == "advance") return EventType::kAdvance;
  if (s == "complete") return EventType::kComplete;
  throw ValidationError("unknown event type \"" + std::string(s) + "\"");
}

bool safe_file_stem(std::string_view id) {
  if (id.empty() || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '-' || c == '_' || c == '.';
  });
}

void append_line(const std::filesystem::path& path, const std::string& line) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::app | std::ios::binary);
  out << line << '\n';
  out.flush();
  if (!out) throw IoError("cannot append to " + path.string());
}

// Calls fn(line, line_number) for every complete line. A final line without a
// newline is an interrupted write and is ignored.
template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) break;
    ++line_no;
    std::string_view line(text.data() + pos, nl - pos);
    if (!line.empty()) fn(line, line_no);
    pos = nl + 1;
  }
}

}  // namespace

FluencyRating rating_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("rating must be an object");
  FluencyRating r;
  r.pair_id = required_string(j, "pair_id");
  r.system_id = required_string(j, "system_id");
  r.rater_id = required_string(j, "rater_id");
  if (!j.contains("rating") || !j["rating"].is_number_integer())
    throw ValidationError("\"rating\" must be an integer from 1 to 5");
  const auto v = j["rating"].get<std::int64_t>();
  if (v < 1 || v > 5)
    throw ValidationError("\"rating\" must be an integer from 1 to 5, got " + std::to_string(v));
  r.rating = static_cast<int>(v);
  return r;
}

json to_json(const FluencyRating& r) {
  return {{"pair_id", r.pair_id}, {"system_id", r.system_id}, {"rating", r.rating},
          {"rater_id", r.rater_id}};
}

json to_json(const Event& e) {
  json j = {{"seq", e.seq}, {"type", std::string(type_name(e.type))},
            {"annotator_id", e.annotator_id}};
  if (e.type == EventType::kSave) j["alignment"] = ctr::to_json(e.alignment);
  if (e.type == EventType::kDelete) j["index"] = e.index;
  if (e.type == EventType::kAdvance) j["to"] = e.index;
  return j;
}

Event event_from_json(const json& j, const DocumentSummaryPair& pair) {
  Event e;
  e.seq = j.at("seq").get<std::uint64_t>();
  e.type = type_from_string(j.at("type").get<std::string>());
  e.annotator_id = j.value("annotator_id", std::string{});
  if (e.type == EventType::kSave)
    e.alignment = alignment_from_json(j.at("alignment"), pair.summary.id, pair.document.id);
  if (e.type == EventType::kDelete) e.index = j.at("index").get<std::size_t>();
  if (e.type == EventType::kAdvance) e.index = j.at("to").get<std::size_t>();
  return e;
}

std::vector<std::size_t> AnnotationSession::unvisited() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < visited.size(); ++i)
    if (!visited[i]) out.push_back(i);
  return out;
}

std::vector<Alignment> AnnotationSession::live_alignments() const {
  std::vector<Alignment> out;
  for (const auto& s : saved_alignments)
    if (!s.deleted) out.push_back(s.alignment);
  return out;
}

AnnotationSession initial_session(const DocumentSummaryPair& pair) {
  AnnotationSession s;
  s.pair_id = pair.id;
  s.visited.assign(pair.summary.sentences.size(), false);
  for (const Alignment& a : pair.alignments) s.saved_alignments.push_back({a, false, 0});
  return s;
}

AnnotationSession apply(const AnnotationSession& s, const DocumentSummaryPair& pair,
                        const Event& e) {
  if (s.status == Status::kComplete) throw ConflictError("pair " + pair.id + " is complete");
  AnnotationSession next = s;
  switch (e.type) {
    case EventType::kSave: {
      Alignment a = e.alignment;
      validate_alignment(pair, a);
      a.summary_spans = canonicalize(a.summary_spans);
      a.document_spans = canonicalize(a.document_spans);
      next.saved_alignments.push_back({std::move(a), false, e.seq});
      break;
    }
    case EventType::kDelete: {
      if (e.index >= next.saved_alignments.size())
        throw NotFoundError("no alignment " + std::to_string(e.index) + " in pair " + pair.id);
      if (next.saved_alignments[e.index].deleted)
        throw ConflictError("alignment " + std::to_string(e.index) + " is already deleted");
      next.saved_alignments[e.index].deleted = true;
      break;
    }
    case EventType::kAdvance: {
      const std::size_t n = next.visited.size();
      if (e.index > n)
        throw ValidationError("sentence " + std::to_string(e.index) + " is out of range (summary has " +
                              std::to_string(n) + " sentences)");
      if (next.current_summary_sentence < n) next.visited[next.current_summary_sentence] = true;
      next.current_summary_sentence = e.index;
      break;
    }
    case EventType::kComplete: {
      const auto missing = next.unvisited();
      if (!missing.empty()) {
        std::string list;
        for (std::size_t i : missing) list += (list.empty() ? "" : ", ") + std::to_string(i);
        throw ValidationError("unvisited summary sentences: " + list);
      }
      next.status = Status::kComplete;
      break;
    }
  }
  if (next.annotator_id.empty()) next.annotator_id = e.annotator_id;
  next.version = e.seq;
  return next;
}

std::filesystem::path default_log_dir(const std::filesystem::path& corpus_path) {
  return std::filesystem::path(corpus_path.string() + ".logs");
}

Store::Store(Corpus corpus, StoreOptions options)
    : corpus_(std::move(corpus)), options_(std::move(options)) {
  for (const auto& pair : corpus_.pairs) {
    auto e = std::make_unique<Entry>();
    e->pair = &pair;
    e->session = std::make_shared<const AnnotationSession>(initial_session(pair));
    if (!entries_.emplace(pair.id, std::move(e)).second)
      throw ValidationError("duplicate pair id " + pair.id);
  }
  if (options_.log_dir.empty()) return;
  for (auto& [id, e] : entries_) replay(*e);
  for_each_line(options_.log_dir / "ratings.jsonl", [&](std::string_view line, std::size_t n) {
    try {
      ratings_.push_back(rating_from_json(json::parse(line)));
    } catch (const std::exception& ex) {
      throw ParseError("ratings log: " + std::string(ex.what()), n);
    }
  });
}

void Store::replay(Entry& e) {
  const auto path = log_path(e.pair->id);
  auto session = std::make_shared<AnnotationSession>(*e.session);
  for_each_line(path, [&](std::string_view line, std::size_t n) {
    try {
      const Event ev = event_from_json(json::parse(line), *e.pair);
      if (ev.seq != session->version + 1)
        throw ValidationError("expected seq " + std::to_string(session->version + 1) + ", got " +
                              std::to_string(ev.seq));
      *session = apply(*session, *e.pair, ev);
    } catch (const std::exception& ex) {
      throw ParseError(path.string() + ": " + ex.what(), n);
    }
  });
  e.session = std::move(session);
}

std::filesystem::path Store::log_path(std::string_view id) const {
  const std::string stem = safe_file_stem(id) ? std::string(id) : "h" + content_hash(id);
  return options_.log_dir / ("pair-" + stem + ".jsonl");
}

Store::Entry& Store::entry(std::string_view id) {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw NotFoundError("unknown pair " + std::string(id));
  return *it->second;
}

const Store::Entry& Store::entry(std::string_view id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw NotFoundError("unknown pair " + std::string(id));
  return *it->second;
}

std::vector<std::string> Store::pair_ids() const {
  std::vector<std::string> out;
  for (const auto& pair : corpus_.pairs) out.push_back(pair.id);
  return out;
}

const DocumentSummaryPair& Store::pair(std::string_view id) const { return *entry(id).pair; }

std::shared_ptr<const AnnotationSession> Store::snapshot(std::string_view id) const {
  return std::atomic_load(&entry(id).session);
}

const std::vector<std::vector<bool>>& Store::bold_masks(std::string_view id) const {
  const Entry& e = entry(id);
  std::call_once(e.masks_once, [&] {
    const auto& p = *e.pair;
    const auto matrix = textproc::relation_matrix(p.summary.tokens, p.document.tokens);
    for (std::size_t s = 0; s < p.summary.sentences.size(); ++s)
      e.masks.push_back(textproc::bold_mask(p.document, p.summary, matrix, s));
  });
  return e.masks;
}

std::shared_ptr<const AnnotationSession> Store::write(std::string_view id, Event ev,
                                                      std::optional<std::uint64_t> expected) {
  Entry& e = entry(id);
  std::lock_guard lock(e.write_mutex);
  const auto current = std::atomic_load(&e.session);
  if (expected && *expected != current->version)
    throw ConflictError("version mismatch: expected " + std::to_string(*expected) + ", current " +
                        std::to_string(current->version));
  if (options_.single_annotator) {
    if (ev.annotator_id.empty())
      throw ValidationError("\"annotator_id\" is required");
    if (!current->annotator_id.empty() && current->annotator_id != ev.annotator_id)
      throw ForbiddenError("pair " + e.pair->id + " belongs to annotator " + current->annotator_id);
  }
  ev.seq = current->version + 1;
  auto next = std::make_shared<const AnnotationSession>(apply(*current, *e.pair, ev));
  if (!options_.log_dir.empty()) {
    json j = to_json(ev);
    // The log keeps the canonical form that was applied.
    if (ev.type == EventType::kSave)
      j["alignment"] = ctr::to_json(next->saved_alignments.back().alignment);
    append_line(log_path(id), j.dump());
  }
  std::atomic_store(&e.session, next);
  return next;
}

std::shared_ptr<const AnnotationSession> Store::save(std::string_view id, Alignment a,
                                                     std::optional<std::uint64_t> expected) {
  Event ev;
  ev.type = EventType::kSave;
  ev.annotator_id = a.annotator_id;
  ev.alignment = std::move(a);
  return write(id, std::move(ev), expected);
}

std::shared_ptr<const AnnotationSession> Store::remove(std::string_view id, std::size_t index,
                                                       const std::string& annotator_id,
                                                       std::optional<std::uint64_t> expected) {
  Event ev;
  ev.type = EventType::kDelete;
  ev.index = index;
  ev.annotator_id = annotator_id;
  return write(id, std::move(ev), expected);
}

std::shared_ptr<const AnnotationSession> Store::advance(std::string_view id,
                                                        std::optional<std::size_t> to,
                                                        const std::string& annotator_id) {
  Event ev;
  ev.type = EventType::kAdvance;
  ev.annotator_id = annotator_id;
  if (to) {
    ev.index = *to;
  } else {
    const auto s = snapshot(id);
    if (s->current_summary_sentence >= s->visited.size())
      throw ValidationError("already past the last summary sentence");
    ev.index = s->current_summary_sentence + 1;
  }
  return write(id, std::move(ev), std::nullopt);
}

std::shared_ptr<const AnnotationSession> Store::complete(std::string_view id,
                                                         const std::string& annotator_id) {
  Event ev;
  ev.type = EventType::kComplete;
  ev.annotator_id = annotator_id;
  return write(id, std::move(ev), std::nullopt);
}

void Store::add_rating(const FluencyRating& r) {
  if (!corpus_.find(r.pair_id)) throw ValidationError("unknown pair " + r.pair_id);
  std::lock_guard lock(ratings_mutex_);
  if (!options_.log_dir.empty())
    append_line(options_.log_dir / "ratings.jsonl", to_json(r).dump());
  ratings_.push_back(r);
}

std::vector<FluencyRating> Store::ratings() const {
  std::lock_guard lock(ratings_mutex_);
  return ratings_;
}

Corpus Store::export_corpus() const {
  Corpus out = corpus_;
  for (auto& pair : out.pairs) {
    const auto s = snapshot(pair.id);
    const bool edited = std::any_of(s->saved_alignments.begin(), s->saved_alignments.end(),
                                    [](const SavedAlignment& a) { return a.seq > 0 || a.deleted; });
    pair.alignments = s->live_alignments();
    if (edited) pair.provenance = Provenance::kManual;
    auto& flags = pair.flags;
    if (!pair.alignments.empty()) flags.erase(std::remove(flags.begin(), flags.end(), "uncovered"), flags.end());
    if (s->status == Status::kComplete && !pair.has_flag("complete")) flags.push_back("complete");
  }
  return out;
}

}  // namespace ctr::app
