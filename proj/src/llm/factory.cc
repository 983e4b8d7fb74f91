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

#include "hearth/llm/factory.h"

#include <filesystem>

#include "hearth/core/serialize.h"
#include "hearth/llm/mock_backend.h"
#include "hearth/llm/remote_backend.h"
#include "hearth/core/strings.h"

namespace hearth::llm {

using nlohmann::json;

absl::StatusOr<BackendDescriptor> DescriptorFromJson(const json& config,
                                                     const std::string& name) {
  if (!config.is_object()) {
    return absl::InvalidArgumentError(
        StrCat("backends.", name, ": expected object"));
  }
  BackendDescriptor d;
  d.name = name;
  const std::string kind = config.value("kind", std::string("mock"));
  if (kind == "mock") {
    d.kind = BackendKind::kMock;
  } else if (kind == "remote-http") {
    d.kind = BackendKind::kRemoteHttp;
  } else {
    return absl::InvalidArgumentError(
        StrCat("backends.", name, ".kind: unknown kind '", kind, "'"));
  }
  d.base_url = config.value("base_url", std::string());
  d.model_name = config.value("model", std::string());
  d.embedding_model = config.value("embedding_model", std::string());
  d.api_key_env = config.value("api_key_env", std::string());
  d.temperature = config.value("temperature", 0.1);
  d.timeout = std::chrono::milliseconds(config.value("timeout_ms", 30000));
  d.max_retries = config.value("max_retries", 3);
  d.initial_backoff =
      std::chrono::milliseconds(config.value("initial_backoff_ms", 250));
  if (absl::Status s = ValidateDescriptor(d); !s.ok()) {
    return absl::InvalidArgumentError(
        StrCat("backends.", name, ": ", s.message()));
  }
  return d;
}

absl::StatusOr<BackendPtr> MakeBackend(const json& config,
                                       const std::string& name,
                                       const std::string& base_dir) {
  HEARTH_ASSIGN_OR_RETURN(BackendDescriptor d, DescriptorFromJson(config, name));
  if (d.kind == BackendKind::kRemoteHttp) {
    HEARTH_ASSIGN_OR_RETURN(auto remote, RemoteHttpBackend::Create(d));
    return BackendPtr(std::move(remote));
  }
  json script_json;
  auto it = config.find("script");
  if (it == config.end()) {
    return absl::InvalidArgumentError(
        StrCat("backends.", name, ".script: required for mock backends"));
  }
  if (it->is_string()) {
    std::filesystem::path p(it->get<std::string>());
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(p.string()));
    HEARTH_ASSIGN_OR_RETURN(script_json, ParseJson(text));
  } else {
    script_json = *it;
  }
  absl::StatusOr<MockScript> script = MockScriptFromJson(script_json);
  if (!script.ok()) {
    return absl::InvalidArgumentError(
        StrCat("backends.", name, ".script: ", script.status().message()));
  }
  HEARTH_ASSIGN_OR_RETURN(auto mock, MockBackend::Create(*std::move(script), d));
  return BackendPtr(std::move(mock));
}

}  // namespace hearth::llm
