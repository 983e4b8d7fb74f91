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

#include "hearth/forge/command_pool.h"

#include "hearth/core/text.h"
#include "hearth/forge/rouge.h"
#include "hearth/core/strings.h"

namespace hearth::forge {

absl::StatusOr<std::unique_ptr<CommandPool>> CommandPool::Create(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    return absl::InvalidArgumentError(
        StrCat("alpha ", alpha, " not in (0, 1]"));
  }
  return std::unique_ptr<CommandPool>(new CommandPool(alpha));
}

Admission CommandPool::EvaluateLocked(
    const std::vector<std::string>& tokens) const {
  Admission out;
  for (size_t i = 0; i < tokens_.size(); ++i) {
    const double s = RougeL(tokens, tokens_[i]);
    if (out.nearest_id.empty() || s > out.max_similarity) {
      out.max_similarity = s;
      out.nearest_id = commands_[i].id;
    }
  }
  out.retained = out.max_similarity < alpha_;
  return out;
}

Admission CommandPool::Evaluate(const Command& candidate) const {
  if (Trim(candidate.text).empty()) return {false, 1.0, ""};
  const std::vector<std::string> tokens = Tokenize(candidate.text);
  std::lock_guard<std::mutex> lock(mu_);
  return EvaluateLocked(tokens);
}

Admission CommandPool::Admit(const Command& candidate) {
  if (Trim(candidate.text).empty()) return {false, 1.0, ""};
  std::vector<std::string> tokens = Tokenize(candidate.text);
  std::lock_guard<std::mutex> lock(mu_);
  Admission out = EvaluateLocked(tokens);
  if (out.retained) {
    commands_.push_back(candidate);
    tokens_.push_back(std::move(tokens));
  }
  return out;
}

std::vector<Command> CommandPool::commands() const {
  std::lock_guard<std::mutex> lock(mu_);
  return commands_;
}

size_t CommandPool::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return commands_.size();
}

}  // namespace hearth::forge
