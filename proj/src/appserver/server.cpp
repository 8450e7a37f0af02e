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

#include <functional>

#include "ctr/appserver.hpp"
#include "ctr/corpus_json.hpp"

namespace ctr::app {

using nlohmann::json;

json session_to_json(const AnnotationSession& s) {
  json alignments = json::array();
  for (std::size_t i = 0; i < s.saved_alignments.size(); ++i) {
    const auto& saved = s.saved_alignments[i];
    json a = ctr::to_json(saved.alignment);
    a["index"] = i;
    a["deleted"] = saved.deleted;
    alignments.push_back(std::move(a));
  }
  json visited = json::array();
  for (bool v : s.visited) visited.push_back(v);
  return {{"id", s.pair_id},
          {"status", std::string(to_string(s.status))},
          {"version", s.version},
          {"annotator_id", s.annotator_id},
          {"current_summary_sentence", s.current_summary_sentence},
          {"visited", std::move(visited)},
          {"unvisited", s.unvisited()},
          {"alignments", std::move(alignments)}};
}

json pair_view(const Store& store, std::string_view id) {
  const auto& pair = store.pair(id);
  json j = session_to_json(*store.snapshot(id));
  j["provenance"] = std::string(to_string(pair.provenance));
  j["flags"] = pair.flags;
  j["document"] = ctr::to_json(pair.document);
  j["summary"] = ctr::to_json(pair.summary);
  json masks = json::array();
  for (const auto& mask : store.bold_masks(id)) {
    json m = json::array();
    for (bool b : mask) m.push_back(b ? 1 : 0);
    masks.push_back(std::move(m));
  }
  j["bold_masks"] = std::move(masks);
  return j;
}

namespace {

using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json body_of(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body);
  if (!j.is_object()) throw ValidationError("request body must be a JSON object");
  return j;
}

std::optional<std::uint64_t> expected_version(const json& body) {
  if (!body.contains("expected_version")) return std::nullopt;
  if (!body["expected_version"].is_number_unsigned())
    throw ValidationError("\"expected_version\" must be a non-negative integer");
  return body["expected_version"].get<std::uint64_t>();
}

std::string annotator_of(const httplib::Request& req, const json& body) {
  if (body.contains("annotator_id")) {
    if (!body["annotator_id"].is_string()) throw ValidationError("\"annotator_id\" must be a string");
    return body["annotator_id"].get<std::string>();
  }
  return req.has_param("annotator_id") ? req.get_param_value("annotator_id") : std::string{};
}

std::size_t index_param(const std::string& text, const char* what) {
  if (text.empty() || text.size() > 18 ||
      text.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError(std::string(what) + " must be a non-negative integer");
  return std::stoull(text);
}

Handler guarded(Handler h) {
  return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
    try {
      h(req, res);
    } catch (const json::exception& e) {
      send(res, 400, {{"error", std::string("malformed JSON: ") + e.what()}});
    } catch (const NotFoundError& e) {
      send(res, 404, {{"error", e.what()}});
    } catch (const ForbiddenError& e) {
      send(res, 403, {{"error", e.what()}});
    } catch (const ConflictError& e) {
      send(res, 409, {{"error", e.what()}});
    } catch (const ValidationError& e) {
      send(res, 422, {{"error", e.what()}});
    } catch (const ServiceError& e) {
      send(res, 502, {{"error", e.what()}, {"retryable", e.retryable()}});
    } catch (const std::exception& e) {
      send(res, 500, {{"error", e.what()}});
    }
  };
}

}  // namespace

struct Server::Impl {
  Store& store;
  ServerOptions options;
  httplib::Server http;
  int port = -1;

  Impl(Store& s, ServerOptions o) : store(s), options(std::move(o)) {
    if (!options.aligner) options.aligner = std::make_shared<silveralign::LexicalBackend>();
    routes();
  }

  void routes() {
    http.Get("/health", guarded([](const httplib::Request&, httplib::Response& res) {
      send(res, 200, {{"ok", true}});
    }));

    http.Get("/pairs", guarded([this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& id : store.pair_ids()) {
        const auto s = store.snapshot(id);
        list.push_back({{"id", id},
                        {"status", std::string(to_string(s->status))},
                        {"version", s->version},
                        {"alignments", s->live_alignments().size()}});
      }
      send(res, 200, {{"pairs", std::move(list)}});
    }));

    http.Get("/pairs/:id", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, pair_view(store, req.path_params.at("id")));
    }));

    http.Get("/pairs/:id/suggestions",
             guarded([this](const httplib::Request& req, httplib::Response& res) {
               const auto& pair = store.pair(req.path_params.at("id"));
               const auto result = silveralign::align_pair(pair, *options.aligner,
                                                           options.align_threshold);
               json list = json::array();
               for (const auto& a : result.alignments) list.push_back(ctr::to_json(a));
               send(res, 200, {{"id", pair.id}, {"backend", options.aligner->name()},
                               {"alignments", std::move(list)}});
             }));

    http.Post("/pairs/:id/alignments",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.path_params.at("id");
                const json body = body_of(req);
                const auto& pair = store.pair(id);
                Alignment a = alignment_from_json(body, pair.summary.id, pair.document.id);
                const auto s = store.save(id, std::move(a), expected_version(body));
                const std::size_t index = s->saved_alignments.size() - 1;
                json stored = ctr::to_json(s->saved_alignments[index].alignment);
                stored["index"] = index;
                stored["deleted"] = false;
                send(res, 201, {{"alignment", std::move(stored)}, {"version", s->version}});
              }));

    http.Delete("/pairs/:id/alignments/:n",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const json body = body_of(req);
                  const auto s = store.remove(req.path_params.at("id"),
                                              index_param(req.path_params.at("n"), "alignment index"),
                                              annotator_of(req, body), expected_version(body));
                  send(res, 200, session_to_json(*s));
                }));

    http.Post("/pairs/:id/advance",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                const json body = body_of(req);
                std::optional<std::size_t> to;
                if (body.contains("to")) {
                  if (!body["to"].is_number_unsigned())
                    throw ValidationError("\"to\" must be a non-negative integer");
                  to = body["to"].get<std::size_t>();
                }
                const auto s = store.advance(req.path_params.at("id"), to, annotator_of(req, body));
                send(res, 200, session_to_json(*s));
              }));

    http.Post("/pairs/:id/complete",
              guarded([this](const httplib::Request& req, httplib::Response& res) {
                const std::string id = req.path_params.at("id");
                const json body = body_of(req);
                const auto current = store.snapshot(id);
                const auto missing = current->unvisited();
                if (current->status != Status::kComplete && !missing.empty()) {
                  send(res, 422, {{"error", "summary sentences not visited"}, {"unvisited", missing}});
                  return;
                }
                send(res, 200, session_to_json(*store.complete(id, annotator_of(req, body))));
              }));

    http.Post("/ratings", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const FluencyRating r = rating_from_json(json::parse(req.body));
      store.add_rating(r);
      send(res, 201, to_json(r));
    }));

    http.Get("/ratings", guarded([this](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& r : store.ratings()) list.push_back(to_json(r));
      send(res, 200, {{"ratings", std::move(list)}});
    }));

    if (!options.static_dir.empty() && !http.set_mount_point("/", options.static_dir.string()))
      throw IoError("static directory not found: " + options.static_dir.string());
  }
};

Server::Server(Store& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {}

Server::~Server() { stop(); }

bool Server::bind(const std::string& host, int port) {
  if (port == 0) {
    impl_->port = impl_->http.bind_to_any_port(host);
    return impl_->port > 0;
  }
  if (!impl_->http.bind_to_port(host, port)) return false;
  impl_->port = port;
  return true;
}

int Server::port() const { return impl_->port; }
void Server::listen() { impl_->http.listen_after_bind(); }
void Server::stop() {
  if (impl_) impl_->http.stop();
}
void Server::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace ctr::app
