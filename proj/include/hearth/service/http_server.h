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

#ifndef HEARTH_SERVICE_HTTP_SERVER_H_
#define HEARTH_SERVICE_HTTP_SERVER_H_

#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/serialize.h"
#include "hearth/service/assistant_service.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace hearth::service {

int HttpStatusFor(const absl::Status& status);
std::string ErrorCodeFor(const absl::Status& status);

// {"request_id", "payload"} or {"request_id", "error": {"code", "message"}}.
Json Envelope(const std::string& request_id, const Json& payload);
Json ErrorEnvelope(const std::string& request_id, const absl::Status& status);

Json OpenApiDocument();

struct HttpOptions {
  // Required as "Authorization: Bearer <token>" on every route except
  // /healthz when non-empty.
  std::string auth_token;
  size_t idempotency_capacity = 1024;
};

// JSON over HTTP. Mutating routes replay the cached response when a request
// arrives again with the same X-Request-Id (or body "request_id").
class HttpServer {
 public:
  HttpServer(AssistantService& service, HttpOptions options = {});
  ~HttpServer();

  // Binds and serves on a background thread. Port 0 picks a free port.
  absl::StatusOr<int> Start(const std::string& host, int port);
  // Blocks until Stop() is called from another thread or a signal handler.
  void Wait();
  void Stop();

 private:
  struct Cached {
    int status;
    std::string body;
  };

  void Routes();
  bool Lookup(const std::string& key, Cached* out);
  void Remember(const std::string& key, Cached value);

  AssistantService& service_;
  const HttpOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;

  std::mutex cache_mu_;
  std::map<std::string, Cached> cache_;
  std::list<std::string> cache_order_;
  uint64_t next_request_ = 1;
};

}  // namespace hearth::service

#endif  // HEARTH_SERVICE_HTTP_SERVER_H_
