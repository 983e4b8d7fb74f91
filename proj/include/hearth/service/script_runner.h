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

#ifndef HEARTH_SERVICE_SCRIPT_RUNNER_H_
#define HEARTH_SERVICE_SCRIPT_RUNNER_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/serialize.h"
#include "hearth/service/assistant_service.h"

namespace hearth::service {

// One scripted user action. Exactly one of the forms applies:
//   {"command": "..."}
//   {"verdict": "accept|advice|reject", "text": "..."}
//   {"consent": true|false}
struct ScriptStep {
  enum class Kind { kCommand, kVerdict, kConsent };
  Kind kind = Kind::kCommand;
  std::string text;
  std::string verdict;
  bool granted = false;
};

struct SessionScript {
  std::string user_id = "default";
  std::string home_id;
  std::vector<ScriptStep> steps;
};

absl::StatusOr<SessionScript> SessionScriptFromJson(const Json& j);
absl::StatusOr<SessionScript> LoadSessionScript(const std::string& path);

struct ScriptResult {
  std::string session_id;
  std::string transcript_hash;
  Json transcript;
  // Step payloads in order, as returned by the service.
  std::vector<Json> steps;
};

// A step failure aborts the run; the status names the step index.
absl::StatusOr<ScriptResult> RunScript(AssistantService& service,
                                       const SessionScript& script);

// Same, through the HTTP API at base_url ("http://host:port").
absl::StatusOr<ScriptResult> RunScriptOverHttp(const std::string& base_url,
                                               const SessionScript& script,
                                               const std::string& token = "");

}  // namespace hearth::service

#endif  // HEARTH_SERVICE_SCRIPT_RUNNER_H_
