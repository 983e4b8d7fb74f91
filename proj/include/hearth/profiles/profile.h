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

#ifndef HEARTH_PROFILES_PROFILE_H_
#define HEARTH_PROFILES_PROFILE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/serialize.h"
#include "hearth/core/types.h"
#include "hearth/llm/backend.h"

namespace hearth::profiles {

struct ProfileFields {
  std::vector<std::string> topics;
  std::string preferences;
  std::string command;
  std::string final_plan;

  friend bool operator==(const ProfileFields&, const ProfileFields&) = default;
};

struct UserProfile {
  std::string id;
  ProfileFields fields;
  llm::EmbeddingVector embedding;
  int merge_count = 1;
  int64_t updated_at = 0;
  // Built mechanically because the model never produced the four fields.
  bool fallback = false;
};

// Canonical four-line rendering; embeddings are computed from this text.
std::string RenderProfile(const ProfileFields& fields);

absl::Status ValidateFields(const ProfileFields& fields);

// Reads "Topics:", "Preferences:", "Command:" and "Final plan:" lines in any
// order. Continuation lines extend the preceding field.
std::optional<ProfileFields> ParseProfileFields(std::string_view reply);

// One line per plan: "dev attr=value; dev attr=value".
std::string SummarizePlan(const ActionPlan& plan);

// What the assistant saw during one accepted turn.
struct InteractionRecord {
  std::string session_id;
  std::string command;
  std::vector<std::string> advice;
  std::vector<std::string> rejected_plans;
  ActionPlan final_plan;
};

std::string RenderTranscript(const InteractionRecord& record);

// The verbatim profile used when the model output cannot be parsed.
ProfileFields FallbackFields(const InteractionRecord& record);

struct DigestResult {
  ProfileFields fields;
  bool fallback = false;
  int model_calls = 0;
};

// Asks for the four fields, retries once with a reformat prompt, then falls
// back to FallbackFields. Never fails.
DigestResult DigestConversation(llm::LlmBackend& local,
                                const InteractionRecord& record);

// Merge prompt with a mechanical union when the reply is unusable.
ProfileFields MergeFields(llm::LlmBackend& local, const ProfileFields& existing,
                          const ProfileFields& incoming);
ProfileFields MechanicalMerge(const ProfileFields& existing,
                              const ProfileFields& incoming);

// dot(a, b) / (|a| |b|). Mismatched dimensions are InvalidArgument; a zero
// vector is UndefinedSimilarity.
absl::StatusOr<double> Cosine(const llm::EmbeddingVector& a,
                              const llm::EmbeddingVector& b);

Json ToJson(const UserProfile& p);
absl::StatusOr<UserProfile> ProfileFromJson(const Json& j,
                                            std::string_view path);

}  // namespace hearth::profiles

#endif  // HEARTH_PROFILES_PROFILE_H_
