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

#include "hearth/llm/backend.h"

#include <cmath>

#include "hearth/core/types.h"
#include "hearth/core/strings.h"

namespace hearth::llm {

absl::Status ValidateDescriptor(const BackendDescriptor& d) {
  if (!(d.temperature >= 0.0 && d.temperature <= 2.0)) {
    return absl::InvalidArgumentError(StrCat(
        "BackendDescriptor.temperature: ", d.temperature, " not in [0, 2]"));
  }
  if (d.timeout.count() <= 0) {
    return absl::InvalidArgumentError(
        "BackendDescriptor.timeout: must be positive");
  }
  if (d.max_retries < 0 || d.max_retries > 10) {
    return absl::InvalidArgumentError(
        "BackendDescriptor.max_retries: must be in [0, 10]");
  }
  if (d.kind == BackendKind::kRemoteHttp && d.base_url.empty()) {
    return absl::InvalidArgumentError(
        "BackendDescriptor.base_url: required for remote-http backends");
  }
  return absl::OkStatus();
}

void CallLog::Record(CallRecord record) {
  std::lock_guard<std::mutex> lock(mu_);
  record.sequence = next_sequence_++;
  records_.push_back(std::move(record));
}

std::vector<CallRecord> CallLog::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

size_t CallLog::chat_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  size_t n = 0;
  for (const CallRecord& r : records_) n += r.kind == CallKind::kChat;
  return n;
}

size_t CallLog::embed_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  size_t n = 0;
  for (const CallRecord& r : records_) n += r.kind == CallKind::kEmbed;
  return n;
}

size_t CallLog::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_.size();
}

void CallLog::Clear() {
  std::lock_guard<std::mutex> lock(mu_);
  records_.clear();
}

int64_t EstimateTokens(std::string_view text) {
  int64_t words = 0;
  words = static_cast<int64_t>(SplitAny(text, " \t\n", true).size());
  return (words * 4 + 2) / 3;
}

absl::StatusOr<ChatExchange> LlmBackend::Chat(std::string_view system_prompt,
                                              std::string_view user_prompt) {
  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<std::string> reply = DoChat(system_prompt, user_prompt);
  const auto latency = std::chrono::steady_clock::now() - start;

  CallRecord record;
  record.kind = CallKind::kChat;
  record.system_prompt = std::string(system_prompt);
  record.user_prompt = std::string(user_prompt);
  if (reply.ok() && Trim(*reply).empty()) {
    reply = absl::UnavailableError(
        StrCat(descriptor_.name, ": empty completion"));
  }
  record.ok = reply.ok();
  if (reply.ok()) record.reply = *reply;
  log_.Record(std::move(record));
  if (!reply.ok()) return reply.status();

  ChatExchange exchange;
  exchange.system_prompt = std::string(system_prompt);
  exchange.user_prompt = std::string(user_prompt);
  exchange.reply = *std::move(reply);
  exchange.token_estimate = EstimateTokens(exchange.system_prompt) +
                            EstimateTokens(exchange.user_prompt) +
                            EstimateTokens(exchange.reply);
  exchange.latency = latency;
  return exchange;
}

absl::StatusOr<EmbeddingVector> LlmBackend::Embed(std::string_view text) {
  if (Trim(text).empty()) {
    return absl::InvalidArgumentError("embed: text must not be empty");
  }
  absl::StatusOr<std::vector<double>> values = DoEmbed(text);
  CallRecord record;
  record.kind = CallKind::kEmbed;
  record.user_prompt = std::string(text);
  if (values.ok()) {
    if (values->empty()) {
      values = absl::UnavailableError(
          StrCat(descriptor_.name, ": empty embedding"));
    } else {
      for (double v : *values) {
        if (!std::isfinite(v)) {
          values = absl::DataLossError(
              StrCat(descriptor_.name, ": non-finite embedding entry"));
          break;
        }
      }
    }
  }
  if (values.ok()) {
    std::lock_guard<std::mutex> lock(dim_mu_);
    if (!embed_dim_) {
      embed_dim_ = values->size();
    } else if (*embed_dim_ != values->size()) {
      values = absl::DataLossError(StrCat(
          descriptor_.name, ": embedding dimension changed from ", *embed_dim_,
          " to ", values->size()));
    }
  }
  record.ok = values.ok();
  log_.Record(std::move(record));
  if (!values.ok()) return values.status();
  return EmbeddingVector{*std::move(values)};
}

}  // namespace hearth::llm
