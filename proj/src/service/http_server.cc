// Copyright 2026 The Hearth Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hearth/service/http_server.h"

#include "hearth/core/errors.h"
#include "hearth/core/strings.h"
#include "httplib.h"

namespace hearth::service {
namespace {

constexpr const char* kJson = "application/json";

using Handler = std::function<absl::StatusOr<Json>(const httplib::Request&,
                                                   const Json& body)>;

std::string RequestIdFrom(const httplib::Request& req, const Json& body) {
  if (req.has_header("X-Request-Id")) return req.get_header_value("X-Request-Id");
  if (body.is_object() && body.contains("request_id") &&
      body["request_id"].is_string()) {
    return body["request_id"].get<std::string>();
  }
  return {};
}

absl::StatusOr<std::string> BodyString(const Json& body, const char* key,
                                       bool required) {
  if (body.is_object() && body.contains(key)) {
    if (!body[key].is_string()) {
      return absl::InvalidArgumentError(StrCat(key, ": expected string"));
    }
    return body[key].get<std::string>();
  }
  if (required) return absl::InvalidArgumentError(StrCat(key, ": missing field"));
  return std::string();
}

}  // namespace

int HttpStatusFor(const absl::Status& s) {
  switch (s.code()) {
    case absl::StatusCode::kOk:
      return 200;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return 400;
    case absl::StatusCode::kUnauthenticated:
      return 401;
    case absl::StatusCode::kPermissionDenied:
      return 403;
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kAborted:
      return 409;
    case absl::StatusCode::kResourceExhausted:
      return 429;
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDeadlineExceeded:
      return 503;
    default:
      return 500;
  }
}

std::string ErrorCodeFor(const absl::Status& s) {
  const ErrorKind kind = KindOf(s);
  if (kind != ErrorKind::kNone) return std::string(ErrorKindName(kind));
  switch (s.code()) {
    case absl::StatusCode::kInvalidArgument:
      return "invalid_argument";
    case absl::StatusCode::kNotFound:
      return "not_found";
    case absl::StatusCode::kFailedPrecondition:
      return "failed_precondition";
    case absl::StatusCode::kUnauthenticated:
      return "unauthenticated";
    case absl::StatusCode::kUnavailable:
      return "unavailable";
    default:
      return "internal";
  }
}

Json Envelope(const std::string& request_id, const Json& payload) {
  return Json{{"request_id", request_id}, {"payload", payload}};
}

Json ErrorEnvelope(const std::string& request_id, const absl::Status& status) {
  return Json{{"request_id", request_id},
              {"error",
               {{"code", ErrorCodeFor(status)},
                {"message", StatusMessage(status)}}}};
}

Json OpenApiDocument() {
  auto op = [](const char* summary, bool body) {
    Json o = {{"summary", summary},
              {"responses",
               {{"200", {{"description", "ApiEnvelope with payload"}}},
                {"default", {{"description", "ApiEnvelope with error"}}}}}};
    if (body) {
      o["requestBody"] = {
          {"content", {{"application/json", {{"schema", {{"type", "object"}}}}}}}};
    }
    return o;
  };
  Json id_param = Json::array(
      {{{"name", "id"}, {"in", "path"}, {"required", true},
        {"schema", {{"type", "string"}}}}});
  Json paths = {
      {"/sessions", {{"post", op("Create a session {user_id, home_id}", true)}}},
      {"/sessions/{id}/command",
       {{"post", op("Submit a command {text}", true)}, {"parameters", id_param}}},
      {"/sessions/{id}/verdict",
       {{"post", op("Answer the pending plan {kind: accept|advice|reject, text}",
                    true)},
        {"parameters", id_param}}},
      {"/sessions/{id}/consent",
       {{"post", op("Resolve the pending cloud consent {granted}", true)},
        {"parameters", id_param}}},
      {"/sessions/{id}/transcript",
       {{"get", op("Public session transcript", false)},
        {"parameters", id_param}}},
      {"/sessions/{id}/events",
       {{"get", op("Session events as text/event-stream; ?after=<seq> or "
                   "Last-Event-ID",
                   false)},
        {"parameters", id_param}}},
      {"/profiles", {{"get", op("Profiles of ?user_id=", false)}}},
      {"/profiles/compact", {{"post", op("Compact a profile store {user_id}", true)}}},
      {"/homes", {{"get", op("List homes", false)}}},
      {"/homes/{id}",
       {{"put", op("Create or replace a home", true)}, {"parameters", id_param}}},
      {"/stats", {{"get", op("Usage statistics including epsilon", false)}}},
      {"/healthz", {{"get", op("Liveness and build info", false)}}},
  };
  Json error_schema = {{"type", "object"},
                       {"properties",
                        {{"code", {{"type", "string"}}},
                         {"message", {{"type", "string"}}}}}};
  Json envelope = {{"type", "object"},
                   {"required", Json::array({"request_id"})},
                   {"properties",
                    {{"request_id", {{"type", "string"}}},
                     {"payload", Json::object()},
                     {"error", error_schema}}}};
  Json doc;
  doc["openapi"] = "3.0.3";
  doc["info"] = {{"title", "hearth assistant API"},
                 {"version", std::string(kBuildVersion)}};
  doc["paths"] = std::move(paths);
  doc["components"]["schemas"]["ApiEnvelope"] = std::move(envelope);
  return doc;
}

HttpServer::HttpServer(AssistantService& service, HttpOptions options)
    : service_(service),
      options_(std::move(options)),
      server_(std::make_unique<httplib::Server>()) {
  Routes();
}

HttpServer::~HttpServer() { Stop(); }

bool HttpServer::Lookup(const std::string& key, Cached* out) {
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = cache_.find(key);
  if (it == cache_.end()) return false;
  *out = it->second;
  return true;
}

void HttpServer::Remember(const std::string& key, Cached value) {
  std::lock_guard<std::mutex> lock(cache_mu_);
  if (cache_.emplace(key, std::move(value)).second) cache_order_.push_back(key);
  while (cache_order_.size() > options_.idempotency_capacity) {
    cache_.erase(cache_order_.front());
    cache_order_.pop_front();
  }
}

void HttpServer::Routes() {
  httplib::Server& s = *server_;

  s.set_pre_routing_handler(
      [this](const httplib::Request& req, httplib::Response& res) {
        if (options_.auth_token.empty() || req.path == "/healthz") {
          return httplib::Server::HandlerResponse::Unhandled;
        }
        if (req.get_header_value("Authorization") ==
            "Bearer " + options_.auth_token) {
          return httplib::Server::HandlerResponse::Unhandled;
        }
        const absl::Status st = absl::UnauthenticatedError("missing or bad token");
        res.status = 401;
        res.set_content(ErrorEnvelope("", st).dump(), kJson);
        return httplib::Server::HandlerResponse::Handled;
      });

  s.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    const absl::Status st =
        res.status == 404
            ? absl::NotFoundError(StrCat("no route for ", req.method, " ",
                                         req.path))
            : absl::UnknownError(StrCat("HTTP ", res.status));
    res.set_content(ErrorEnvelope("", st).dump(), kJson);
  });

  // Wraps a handler with body parsing, envelopes and idempotent replay.
  auto wrap = [this](bool mutating, Handler h) {
    return [this, mutating, h = std::move(h)](const httplib::Request& req,
                                              httplib::Response& res) {
      Json body = Json::object();
      absl::Status parse_error = absl::OkStatus();
      if (!req.body.empty()) {
        absl::StatusOr<Json> parsed = ParseJson(req.body, "request body");
        if (parsed.ok()) {
          body = *std::move(parsed);
        } else {
          parse_error = parsed.status();
        }
      }
      std::string request_id = RequestIdFrom(req, body);
      const bool replayable = mutating && !request_id.empty();
      const std::string key = StrCat(request_id, " ", req.method, " ", req.path);
      if (replayable) {
        Cached hit;
        if (Lookup(key, &hit)) {
          res.status = hit.status;
          res.set_header("X-Idempotent-Replay", "true");
          res.set_content(hit.body, kJson);
          return;
        }
      }
      if (request_id.empty()) {
        std::lock_guard<std::mutex> lock(cache_mu_);
        request_id = StrCat("req-", next_request_++);
      }
      absl::StatusOr<Json> result =
          parse_error.ok() ? h(req, body) : absl::StatusOr<Json>(parse_error);
      Cached out;
      if (result.ok()) {
        out = {200, Envelope(request_id, *result).dump()};
      } else {
        out = {HttpStatusFor(result.status()),
               ErrorEnvelope(request_id, result.status()).dump()};
      }
      if (replayable) Remember(key, out);
      res.status = out.status;
      res.set_content(out.body, kJson);
    };
  };

  s.Get("/healthz", wrap(false, [this](const httplib::Request&, const Json&)
                                    -> absl::StatusOr<Json> {
          return service_.Health();
        }));
  s.Get("/openapi.json",
        [](const httplib::Request&, httplib::Response& res) {
          res.set_content(OpenApiDocument().dump(1), kJson);
        });
  s.Post("/sessions",
         wrap(true, [this](const httplib::Request&,
                           const Json& body) -> absl::StatusOr<Json> {
           HEARTH_ASSIGN_OR_RETURN(std::string user,
                                   BodyString(body, "user_id", false));
           HEARTH_ASSIGN_OR_RETURN(std::string home,
                                   BodyString(body, "home_id", true));
           return service_.CreateSession(user, home);
         }));
  s.Post(R"(/sessions/([^/]+)/command)",
         wrap(true, [this](const httplib::Request& req,
                           const Json& body) -> absl::StatusOr<Json> {
           HEARTH_ASSIGN_OR_RETURN(std::string text,
                                   BodyString(body, "text", true));
           return service_.SubmitCommand(req.matches[1], text);
         }));
  s.Post(R"(/sessions/([^/]+)/verdict)",
         wrap(true, [this](const httplib::Request& req,
                           const Json& body) -> absl::StatusOr<Json> {
           HEARTH_ASSIGN_OR_RETURN(std::string kind,
                                   BodyString(body, "kind", true));
           HEARTH_ASSIGN_OR_RETURN(std::string text,
                                   BodyString(body, "text", false));
           return service_.GiveVerdict(req.matches[1], kind, text);
         }));
  s.Post(R"(/sessions/([^/]+)/consent)",
         wrap(true, [this](const httplib::Request& req,
                           const Json& body) -> absl::StatusOr<Json> {
           if (!body.is_object() || !body.contains("granted") ||
               !body["granted"].is_boolean()) {
             return absl::InvalidArgumentError("granted: expected boolean");
           }
           return service_.ResolveConsent(req.matches[1],
                                          body["granted"].get<bool>());
         }));
  s.Get(R"(/sessions/([^/]+)/transcript)",
        wrap(false, [this](const httplib::Request& req,
                           const Json&) -> absl::StatusOr<Json> {
          return service_.Transcript(req.matches[1]);
        }));
  s.Get(R"(/sessions/([^/]+)/events)",
        [this](const httplib::Request& req, httplib::Response& res) {
          uint64_t after = 0;
          const std::string cursor =
              req.has_param("after") ? req.get_param_value("after")
                                     : req.get_header_value("Last-Event-ID");
          if (!cursor.empty()) {
            try {
              after = std::stoull(cursor);
            } catch (...) {
              after = 0;
            }
          }
          absl::StatusOr<std::vector<interaction::Event>> events =
              service_.EventsAfter(req.matches[1], after);
          if (!events.ok()) {
            res.status = HttpStatusFor(events.status());
            res.set_content(ErrorEnvelope("", events.status()).dump(), kJson);
            return;
          }
          // Backlog only; clients reconnect with Last-Event-ID for more.
          std::string out = "retry: 1000\n\n";
          for (const interaction::Event& e : *events) {
            StrAppend(&out, "id: ", e.seq, "\nevent: ", e.type, "\ndata: ",
                      interaction::EventToJson(e).dump(), "\n\n");
          }
          res.set_header("Cache-Control", "no-cache");
          res.set_content(out, "text/event-stream");
        });
  s.Get("/profiles", wrap(false, [this](const httplib::Request& req,
                                        const Json&) -> absl::StatusOr<Json> {
          return service_.ListProfiles(req.get_param_value("user_id"));
        }));
  s.Post("/profiles/compact",
         wrap(true, [this](const httplib::Request&,
                           const Json& body) -> absl::StatusOr<Json> {
           HEARTH_ASSIGN_OR_RETURN(std::string user,
                                   BodyString(body, "user_id", false));
           return service_.CompactProfiles(user);
         }));
  s.Get("/homes", wrap(false, [this](const httplib::Request&,
                                     const Json&) -> absl::StatusOr<Json> {
          return service_.ListHomes();
        }));
  s.Put(R"(/homes/([^/]+))",
        wrap(true, [this](const httplib::Request& req,
                          const Json& body) -> absl::StatusOr<Json> {
          return service_.PutHome(req.matches[1], body);
        }));
  s.Get("/stats", wrap(false, [this](const httplib::Request&,
                                     const Json&) -> absl::StatusOr<Json> {
          return service_.Stats();
        }));
}

absl::StatusOr<int> HttpServer::Start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
    if (bound < 0) {
      return absl::UnavailableError(StrCat("cannot bind ", host));
    }
  } else if (!server_->bind_to_port(host, port)) {
    return absl::UnavailableError(StrCat("cannot bind ", host, ":", port));
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void HttpServer::Wait() {
  if (thread_.joinable()) thread_.join();
}

void HttpServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace hearth::service
