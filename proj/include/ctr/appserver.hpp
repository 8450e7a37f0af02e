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

#ifndef CTR_APPSERVER_HPP_
#define CTR_APPSERVER_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctr/corpus.hpp"
#include "ctr/error.hpp"
#include "ctr/silveralign.hpp"

namespace ctr::app {

enum class Status { kInProgress, kComplete };
std::string_view to_string(Status s);

struct FluencyRating {
  std::string pair_id;
  std::string system_id;
  int rating = 0;
  std::string rater_id;
};

// Throws ValidationError unless rating is a JSON integer in 1..5 and the id
// fields are non-empty strings.
FluencyRating rating_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FluencyRating& r);

enum class EventType { kSave, kDelete, kAdvance, kComplete };

struct Event {
  std::uint64_t seq = 0;
  EventType type = EventType::kSave;
  std::string annotator_id;
  Alignment alignment;           // kSave
  std::size_t index = 0;         // kDelete: alignment index; kAdvance: target sentence
};

nlohmann::json to_json(const Event& e);
Event event_from_json(const nlohmann::json& j, const DocumentSummaryPair& pair);

struct SavedAlignment {
  Alignment alignment;
  bool deleted = false;
  std::uint64_t seq = 0;  // 0 for alignments present in the corpus file
};

struct AnnotationSession {
  std::string pair_id;
  std::string annotator_id;  // first annotator to write, empty until then
  std::size_t current_summary_sentence = 0;
  std::vector<bool> visited;  // one per summary sentence
  std::vector<SavedAlignment> saved_alignments;
  Status status = Status::kInProgress;
  std::uint64_t version = 0;  // number of applied events

  std::vector<std::size_t> unvisited() const;
  std::vector<Alignment> live_alignments() const;
};

AnnotationSession initial_session(const DocumentSummaryPair& pair);

// Applies one event to a copy of `s`. Throws ValidationError for events the
// session cannot accept and ConflictError when the session is complete.
AnnotationSession apply(const AnnotationSession& s, const DocumentSummaryPair& pair,
                        const Event& e);

class ConflictError : public Error {
 public:
  using Error::Error;
};
class NotFoundError : public Error {
 public:
  using Error::Error;
};
class ForbiddenError : public Error {
 public:
  using Error::Error;
};

struct StoreOptions {
  std::filesystem::path log_dir;
  bool single_annotator = false;
};

// Default log directory for a corpus file: "<corpus>.logs".
std::filesystem::path default_log_dir(const std::filesystem::path& corpus_path);

// Holds the corpus and one session per pair. Writes to a pair go through that
// pair's mutex and are appended to its log before the new snapshot is
// published; readers only load the current snapshot.
class Store {
 public:
  Store(Corpus corpus, StoreOptions options);

  const Corpus& corpus() const { return corpus_; }
  const StoreOptions& options() const { return options_; }

  std::vector<std::string> pair_ids() const;
  const DocumentSummaryPair& pair(std::string_view id) const;
  std::shared_ptr<const AnnotationSession> snapshot(std::string_view id) const;
  const std::vector<std::vector<bool>>& bold_masks(std::string_view id) const;

  // Each returns the session after the write. expected_version, when set,
  // must equal the current version.
  std::shared_ptr<const AnnotationSession> save(std::string_view id, Alignment a,
                                                std::optional<std::uint64_t> expected_version = {});
  std::shared_ptr<const AnnotationSession> remove(std::string_view id, std::size_t index,
                                                  const std::string& annotator_id,
                                                  std::optional<std::uint64_t> expected_version = {});
  std::shared_ptr<const AnnotationSession> advance(std::string_view id,
                                                   std::optional<std::size_t> to,
                                                   const std::string& annotator_id);
  std::shared_ptr<const AnnotationSession> complete(std::string_view id,
                                                    const std::string& annotator_id);

  void add_rating(const FluencyRating& r);
  std::vector<FluencyRating> ratings() const;

  // The corpus with every pair's live alignments; annotated pairs become
  // manual and complete ones carry the "complete" flag.
  Corpus export_corpus() const;

  std::filesystem::path log_path(std::string_view id) const;

 private:
  struct Entry {
    const DocumentSummaryPair* pair = nullptr;
    std::shared_ptr<const AnnotationSession> session;
    mutable std::mutex write_mutex;
    mutable std::once_flag masks_once;
    mutable std::vector<std::vector<bool>> masks;
  };

  Entry& entry(std::string_view id);
  const Entry& entry(std::string_view id) const;
  std::shared_ptr<const AnnotationSession> write(std::string_view id, Event e,
                                                 std::optional<std::uint64_t> expected_version);
  void replay(Entry& e);

  Corpus corpus_;
  StoreOptions options_;
  std::map<std::string, std::unique_ptr<Entry>, std::less<>> entries_;
  mutable std::mutex ratings_mutex_;
  std::vector<FluencyRating> ratings_;
};

struct ServerOptions {
  std::filesystem::path static_dir;
  // Backend used by GET /pairs/{id}/suggestions; lexical when unset.
  std::shared_ptr<const silveralign::Backend> aligner;
  double align_threshold = silveralign::kDefaultAlignThreshold;
};

class Server {
 public:
  Server(Store& store, ServerOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and serves until stop(). Port 0 picks a free port.
  bool bind(const std::string& host, int port);
  int port() const;
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

nlohmann::json session_to_json(const AnnotationSession& s);
nlohmann::json pair_view(const Store& store, std::string_view id);

}  // namespace ctr::app

#endif  // CTR_APPSERVER_HPP_
