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

#ifndef HEARTH_LLM_BACKEND_H_
#define HEARTH_LLM_BACKEND_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace hearth::llm {

enum class BackendKind { kRemoteHttp, kMock };

struct BackendDescriptor {
  BackendKind kind = BackendKind::kMock;
  // Human-readable label used in logs ("local-slm", "cloud", ...).
  std::string name;
  std::string base_url;
  std::string model_name;
  std::string embedding_model;
  // Name of the environment variable holding the API key, if any.
  std::string api_key_env;
  double temperature = 0.1;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{250};
};

absl::Status ValidateDescriptor(const BackendDescriptor& d);

struct ChatExchange {
  std::string system_prompt;
  std::string user_prompt;
  std::string reply;
  int64_t token_estimate = 0;
  std::chrono::nanoseconds latency{0};
};

struct EmbeddingVector {
  std::vector<double> values;

  size_t dim() const { return values.size(); }
  friend bool operator==(const EmbeddingVector&,
                         const EmbeddingVector&) = default;
};

enum class CallKind { kChat, kEmbed };

struct CallRecord {
  uint64_t sequence = 0;
  CallKind kind = CallKind::kChat;
  std::string system_prompt;
  std::string user_prompt;
  std::string reply;
  bool ok = false;
};

// Thread-safe record of every request a backend served.
class CallLog {
 public:
  void Record(CallRecord record);
  std::vector<CallRecord> Snapshot() const;
  size_t chat_count() const;
  size_t embed_count() const;
  size_t size() const;
  void Clear();

 private:
  mutable std::mutex mu_;
  std::vector<CallRecord> records_;
  uint64_t next_sequence_ = 1;
};

// Rough token count: whitespace-separated words times 4/3.
int64_t EstimateTokens(std::string_view text);

// A chat/embedding backend. Implementations must be safe for concurrent
// Chat and Embed calls.
class LlmBackend {
 public:
  explicit LlmBackend(BackendDescriptor descriptor)
      : descriptor_(std::move(descriptor)) {}
  virtual ~LlmBackend() = default;

  LlmBackend(const LlmBackend&) = delete;
  LlmBackend& operator=(const LlmBackend&) = delete;

  // Never returns OK with an empty reply.
  absl::StatusOr<ChatExchange> Chat(std::string_view system_prompt,
                                    std::string_view user_prompt);
  absl::StatusOr<EmbeddingVector> Embed(std::string_view text);

  const BackendDescriptor& descriptor() const { return descriptor_; }
  const CallLog& log() const { return log_; }
  CallLog& log() { return log_; }

 protected:
  virtual absl::StatusOr<std::string> DoChat(std::string_view system_prompt,
                                             std::string_view user_prompt) = 0;
  virtual absl::StatusOr<std::vector<double>> DoEmbed(
      std::string_view text) = 0;

 private:
  BackendDescriptor descriptor_;
  CallLog log_;
  std::mutex dim_mu_;
  std::optional<size_t> embed_dim_;
};

using BackendPtr = std::shared_ptr<LlmBackend>;

}  // namespace hearth::llm

#endif  // HEARTH_LLM_BACKEND_H_
