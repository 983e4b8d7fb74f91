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

#ifndef HEARTH_LLM_REMOTE_BACKEND_H_
#define HEARTH_LLM_REMOTE_BACKEND_H_

#include <memory>
#include <string>

#include "absl/status/statusor.h"
#include "hearth/llm/backend.h"

namespace hearth::llm {

struct ParsedUrl {
  std::string scheme_host_port;  // "http://127.0.0.1:8080"
  std::string path_prefix;       // "" or "/v1"
};

absl::StatusOr<ParsedUrl> ParseBaseUrl(std::string_view url);

// OpenAI-compatible client: POST {base}/chat/completions and
// {base}/embeddings. base_url should include the version prefix, e.g.
// "https://api.openai.com/v1". Transport errors, 429 and 5xx are retried
// with exponential backoff; other non-2xx statuses fail immediately.
class RemoteHttpBackend final : public LlmBackend {
 public:
  static absl::StatusOr<std::shared_ptr<RemoteHttpBackend>> Create(
      BackendDescriptor descriptor);

 protected:
  absl::StatusOr<std::string> DoChat(std::string_view system_prompt,
                                     std::string_view user_prompt) override;
  absl::StatusOr<std::vector<double>> DoEmbed(std::string_view text) override;

 private:
  RemoteHttpBackend(BackendDescriptor descriptor, ParsedUrl url,
                    std::string api_key);

  absl::StatusOr<std::string> PostWithRetry(const std::string& path,
                                            const std::string& body);

  const ParsedUrl url_;
  const std::string api_key_;
};

}  // namespace hearth::llm

#endif  // HEARTH_LLM_REMOTE_BACKEND_H_
