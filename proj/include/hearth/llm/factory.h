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

#ifndef HEARTH_LLM_FACTORY_H_
#define HEARTH_LLM_FACTORY_H_

#include <string>

#include "absl/status/statusor.h"
#include "hearth/llm/backend.h"
#include "json.hpp"

namespace hearth::llm {

// Backend config block:
//   {"kind": "remote-http", "base_url": "...", "model": "...",
//    "embedding_model": "...", "api_key_env": "OPENAI_API_KEY",
//    "temperature": 0.1, "timeout_ms": 30000, "max_retries": 3}
//   {"kind": "mock", "script": "relative/or/absolute.json" | {...inline...}}
// Relative script paths resolve against `base_dir`.
absl::StatusOr<BackendPtr> MakeBackend(const nlohmann::json& config,
                                       const std::string& name,
                                       const std::string& base_dir);

absl::StatusOr<BackendDescriptor> DescriptorFromJson(
    const nlohmann::json& config, const std::string& name);

}  // namespace hearth::llm

#endif  // HEARTH_LLM_FACTORY_H_
