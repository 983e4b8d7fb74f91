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

#ifndef HEARTH_LLM_MOCK_BACKEND_H_
#define HEARTH_LLM_MOCK_BACKEND_H_

#include <chrono>
#include <memory>
#include <regex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/llm/backend.h"
#include "json.hpp"

namespace hearth::llm {

inline constexpr size_t kMockEmbeddingDim = 256;

enum class MatchTarget { kUser, kSystem, kEither };

// One scripted rule. The first rule (in declaration order) whose pattern is
// found in the target prompt wins. Replies may reference {{user}},
// {{system}} and regex captures {{1}}..{{9}}.
struct MockRule {
  std::string pattern;
  std::string reply;
  bool icase = false;
  MatchTarget target = MatchTarget::kUser;
};

enum class MockBuiltin {
  kNone,
  // Reply equals the user prompt.
  kEcho,
  // Answers every "Command <id>: <text>" line with
  // "Plan for command <id>: Handle request: <text>".
  kEchoCloud,
};

struct MockScript {
  std::vector<MockRule> rules;
  // Consulted when no rule matches; kNone means use `fallback`.
  MockBuiltin builtin = MockBuiltin::kNone;
  // Reply when nothing else applies. Empty means unmatched prompts fail.
  std::string fallback;
  std::chrono::milliseconds delay{0};
  size_t embedding_dim = kMockEmbeddingDim;
};

absl::StatusOr<MockScript> MockScriptFromJson(const nlohmann::json& j);
nlohmann::json MockScriptToJson(const MockScript& script);

// Hashed bag-of-tokens: each token adds 1 at FNV-1a(token) mod dim, then
// the vector is L2-normalized. Text without tokens hashes the raw string.
std::vector<double> HashedBagOfTokens(std::string_view text, size_t dim);

// Renders the echo-cloud answer for a combined query.
std::string EchoCloudReply(std::string_view user_prompt);

class MockBackend final : public LlmBackend {
 public:
  // Fails on an empty script (no rules, builtin or fallback) and on
  // patterns that do not compile.
  static absl::StatusOr<std::shared_ptr<MockBackend>> Create(
      MockScript script, BackendDescriptor descriptor = {});

 protected:
  absl::StatusOr<std::string> DoChat(std::string_view system_prompt,
                                     std::string_view user_prompt) override;
  absl::StatusOr<std::vector<double>> DoEmbed(std::string_view text) override;

 private:
  struct CompiledRule {
    MockRule rule;
    std::regex regex;
  };

  MockBackend(MockScript script, std::vector<CompiledRule> compiled,
              BackendDescriptor descriptor);

  const MockScript script_;
  const std::vector<CompiledRule> compiled_;
};

// Convenience for tests and the CLI: a backend built from a rule engine
// script; the spelled-out name of the rule-engine operation.
absl::StatusOr<BackendPtr> MockRuleEngine(MockScript script,
                                          std::string name = "mock");

}  // namespace hearth::llm

#endif  // HEARTH_LLM_MOCK_BACKEND_H_
