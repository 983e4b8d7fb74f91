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

#include "hearth/llm/remote_backend.h"

#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "hearth/core/strings.h"

namespace hearth::llm {
namespace {

using nlohmann::json;

bool Retryable(int status) { return status == 429 || status >= 500; }

}  // namespace

absl::StatusOr<ParsedUrl> ParseBaseUrl(std::string_view url) {
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    return absl::InvalidArgumentError(
        StrCat("base_url '", url, "' has no scheme"));
  }
  const std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    return absl::InvalidArgumentError(
        StrCat("base_url '", url, "': unsupported scheme"));
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  ParsedUrl out;
  if (path_start == std::string_view::npos) {
    out.scheme_host_port = std::string(url);
  } else {
    out.scheme_host_port = std::string(url.substr(0, path_start));
    out.path_prefix = std::string(url.substr(path_start));
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
      out.path_prefix.pop_back();
    }
  }
  if (out.scheme_host_port.size() <= scheme_end + 3) {
    return absl::InvalidArgumentError(
        StrCat("base_url '", url, "' has no host"));
  }
  return out;
}

RemoteHttpBackend::RemoteHttpBackend(BackendDescriptor descriptor,
                                     ParsedUrl url, std::string api_key)
    : LlmBackend(std::move(descriptor)),
      url_(std::move(url)),
      api_key_(std::move(api_key)) {}

absl::StatusOr<std::shared_ptr<RemoteHttpBackend>> RemoteHttpBackend::Create(
    BackendDescriptor descriptor) {
  descriptor.kind = BackendKind::kRemoteHttp;
  if (absl::Status s = ValidateDescriptor(descriptor); !s.ok()) return s;
  absl::StatusOr<ParsedUrl> url = ParseBaseUrl(descriptor.base_url);
  if (!url.ok()) return url.status();
  std::string key;
  if (!descriptor.api_key_env.empty()) {
    if (const char* v = std::getenv(descriptor.api_key_env.c_str())) key = v;
  }
  if (descriptor.name.empty()) descriptor.name = descriptor.model_name;
  return std::shared_ptr<RemoteHttpBackend>(new RemoteHttpBackend(
      std::move(descriptor), *std::move(url), std::move(key)));
}

absl::StatusOr<std::string> RemoteHttpBackend::PostWithRetry(
    const std::string& path, const std::string& body) {
  const BackendDescriptor& d = descriptor();
  httplib::Client client(url_.scheme_host_port);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(d.timeout);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(d.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!api_key_.empty()) {
    headers.emplace("Authorization", StrCat("Bearer ", api_key_));
  }
  const std::string full_path = url_.path_prefix + path;

  absl::Status last = absl::UnavailableError("no attempt made");
  auto backoff = d.initial_backoff;
  const int attempts = std::max(1, d.max_retries);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Result res =
        client.Post(full_path, headers, body, "application/json");
    if (!res) {
      const httplib::Error err = res.error();
      last = err == httplib::Error::Read || err == httplib::Error::Write ||
                     err == httplib::Error::ConnectionTimeout
                 ? absl::DeadlineExceededError(StrCat(
                       d.name, ": ", httplib::to_string(err)))
                 : absl::UnavailableError(
                       StrCat(d.name, ": ", httplib::to_string(err)));
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    last = absl::UnavailableError(
        StrCat(d.name, ": HTTP ", res->status, ": ", res->body));
    if (!Retryable(res->status)) {
      return absl::FailedPreconditionError(
          StrCat(d.name, ": HTTP ", res->status, ": ", res->body));
    }
  }
  return last;
}

absl::StatusOr<std::string> RemoteHttpBackend::DoChat(
    std::string_view system_prompt, std::string_view user_prompt) {
  const BackendDescriptor& d = descriptor();
  json messages = json::array();
  if (!system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", system_prompt}});
  }
  messages.push_back({{"role", "user"}, {"content", user_prompt}});
  const json request = {{"model", d.model_name},
                        {"messages", messages},
                        {"temperature", d.temperature},
                        {"stream", false}};
  absl::StatusOr<std::string> body =
      PostWithRetry("/chat/completions", request.dump());
  if (!body.ok()) return body.status();
  json reply = json::parse(*body, nullptr, false);
  if (reply.is_discarded()) {
    return absl::DataLossError(StrCat(d.name, ": reply is not JSON"));
  }
  try {
    return reply.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const json::exception& e) {
    return absl::DataLossError(
        StrCat(d.name, ": malformed completion: ", e.what()));
  }
}

absl::StatusOr<std::vector<double>> RemoteHttpBackend::DoEmbed(
    std::string_view text) {
  const BackendDescriptor& d = descriptor();
  const json request = {
      {"model", d.embedding_model.empty() ? d.model_name : d.embedding_model},
      {"input", text}};
  absl::StatusOr<std::string> body = PostWithRetry("/embeddings", request.dump());
  if (!body.ok()) return body.status();
  json reply = json::parse(*body, nullptr, false);
  if (reply.is_discarded()) {
    return absl::DataLossError(StrCat(d.name, ": reply is not JSON"));
  }
  try {
    return reply.at("data").at(0).at("embedding").get<std::vector<double>>();
  } catch (const json::exception& e) {
    return absl::DataLossError(
        StrCat(d.name, ": malformed embedding: ", e.what()));
  }
}

}  // namespace hearth::llm
