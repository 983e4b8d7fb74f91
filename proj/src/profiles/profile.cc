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

#include "hearth/profiles/profile.h"

#include <algorithm>
#include <cmath>

#include "hearth/core/errors.h"
#include "hearth/core/prompts.h"
#include "hearth/core/strings.h"
#include "hearth/core/text.h"

namespace hearth::profiles {
namespace {

constexpr std::string_view kNoPreference = "none stated";

enum class Field { kNone, kTopics, kPreferences, kCommand, kFinalPlan };

// Matches a field label at the start of `line` (case-insensitive, optional
// bullets and bold markers) and returns the remainder.
Field MatchLabel(std::string_view line, std::string* rest) {
  static constexpr std::pair<std::string_view, Field> kLabels[] = {
      {"topics", Field::kTopics},
      {"preferences", Field::kPreferences},
      {"command", Field::kCommand},
      {"final plan", Field::kFinalPlan},
      {"final action plan", Field::kFinalPlan},
  };
  size_t start = 0;
  while (start < line.size() &&
         (line[start] == '-' || line[start] == '*' || line[start] == ' ')) {
    ++start;
  }
  const std::string lowered = ToLower(line.substr(start));
  for (const auto& [label, field] : kLabels) {
    if (lowered.compare(0, label.size(), label) != 0) continue;
    size_t pos = label.size();
    while (pos < lowered.size() && lowered[pos] == '*') ++pos;
    if (pos < lowered.size() && lowered[pos] == ':') {
      ++pos;
      while (pos < lowered.size() && lowered[pos] == '*') ++pos;
      *rest = Trim(line.substr(start + pos));
      return field;
    }
  }
  return Field::kNone;
}

std::vector<std::string> SplitTopics(std::string_view text) {
  std::vector<std::string> out;
  for (std::string_view piece : SplitAny(text, ",;")) {
    std::string t = ToLower(Trim(piece));
    if (t.empty()) continue;
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

}  // namespace

std::string RenderProfile(const ProfileFields& f) {
  return StrCat("Topics: ", StrJoin(f.topics, ", "),
                "\nPreferences: ", f.preferences, "\nCommand: ", f.command,
                "\nFinal plan: ", f.final_plan, "\n");
}

absl::Status ValidateFields(const ProfileFields& f) {
  if (f.topics.empty()) {
    return absl::InvalidArgumentError("UserProfile.topics: must not be empty");
  }
  if (Trim(f.preferences).empty()) {
    return absl::InvalidArgumentError(
        "UserProfile.preferences: must not be empty");
  }
  if (Trim(f.command).empty()) {
    return absl::InvalidArgumentError("UserProfile.command: must not be empty");
  }
  if (Trim(f.final_plan).empty()) {
    return absl::InvalidArgumentError(
        "UserProfile.final_plan: must not be empty");
  }
  return absl::OkStatus();
}

std::optional<ProfileFields> ParseProfileFields(std::string_view reply) {
  ProfileFields out;
  std::string topics;
  std::string* target = nullptr;
  for (const std::string& line : NonEmptyLines(reply)) {
    std::string rest;
    switch (MatchLabel(line, &rest)) {
      case Field::kTopics:
        target = &topics;
        break;
      case Field::kPreferences:
        target = &out.preferences;
        break;
      case Field::kCommand:
        target = &out.command;
        break;
      case Field::kFinalPlan:
        target = &out.final_plan;
        break;
      case Field::kNone:
        if (target != nullptr) StrAppend(target, " ", line);
        continue;
    }
    if (!target->empty()) return std::nullopt;  // label repeated
    *target = rest;
  }
  out.topics = SplitTopics(topics);
  out.preferences = Trim(out.preferences);
  out.command = Trim(out.command);
  out.final_plan = Trim(out.final_plan);
  if (!ValidateFields(out).ok()) return std::nullopt;
  return out;
}

std::string SummarizePlan(const ActionPlan& plan) {
  std::vector<std::string> steps;
  for (const PlanStep& s : plan.steps) {
    steps.push_back(StrCat(s.device_id, " ", s.attribute, "=", s.value));
  }
  return StrJoin(steps, "; ");
}

std::string RenderTranscript(const InteractionRecord& r) {
  std::string out = StrCat("User: ", r.command, "\n");
  for (const std::string& p : r.rejected_plans) {
    StrAppend(&out, "Assistant (not accepted): ", p, "\n");
  }
  for (const std::string& a : r.advice) StrAppend(&out, "User advice: ", a, "\n");
  StrAppend(&out, "Assistant (accepted): ", SummarizePlan(r.final_plan), "\n");
  if (!r.final_plan.rationale.empty()) {
    StrAppend(&out, "Rationale: ", r.final_plan.rationale, "\n");
  }
  return out;
}

ProfileFields FallbackFields(const InteractionRecord& r) {
  ProfileFields f;
  f.topics = Keywords(r.command);
  if (f.topics.empty()) f.topics = {ToLower(Trim(r.command))};
  f.preferences =
      r.advice.empty() ? std::string(kNoPreference) : StrJoin(r.advice, "; ");
  f.command = Trim(r.command);
  f.final_plan = SummarizePlan(r.final_plan);
  if (f.final_plan.empty()) f.final_plan = "no device changes";
  return f;
}

DigestResult DigestConversation(llm::LlmBackend& local,
                                const InteractionRecord& record) {
  DigestResult out;
  absl::StatusOr<llm::ChatExchange> first =
      local.Chat(prompts::kAssistantSystem,
                 prompts::ProfileGeneration(RenderTranscript(record)));
  ++out.model_calls;
  if (first.ok()) {
    if (auto parsed = ParseProfileFields(first->reply)) {
      out.fields = *std::move(parsed);
      return out;
    }
    absl::StatusOr<llm::ChatExchange> second = local.Chat(
        prompts::kAssistantSystem, prompts::ProfileReformat(first->reply));
    ++out.model_calls;
    if (second.ok()) {
      if (auto parsed = ParseProfileFields(second->reply)) {
        out.fields = *std::move(parsed);
        return out;
      }
    }
  }
  out.fields = FallbackFields(record);
  out.fallback = true;
  return out;
}

ProfileFields MechanicalMerge(const ProfileFields& existing,
                              const ProfileFields& incoming) {
  ProfileFields out = existing;
  for (const std::string& t : incoming.topics) {
    if (std::find(out.topics.begin(), out.topics.end(), t) == out.topics.end()) {
      out.topics.push_back(t);
    }
  }
  if (incoming.preferences != existing.preferences &&
      incoming.preferences != kNoPreference) {
    out.preferences = existing.preferences == kNoPreference
                          ? incoming.preferences
                          : StrCat(existing.preferences, "; ",
                                   incoming.preferences);
  }
  out.command = incoming.command;
  out.final_plan = incoming.final_plan;
  return out;
}

ProfileFields MergeFields(llm::LlmBackend& local, const ProfileFields& existing,
                          const ProfileFields& incoming) {
  absl::StatusOr<llm::ChatExchange> reply = local.Chat(
      prompts::kAssistantSystem,
      prompts::ProfileMerging(RenderProfile(existing), RenderProfile(incoming)));
  if (reply.ok()) {
    if (auto parsed = ParseProfileFields(reply->reply)) return *parsed;
  }
  return MechanicalMerge(existing, incoming);
}

absl::StatusOr<double> Cosine(const llm::EmbeddingVector& a,
                              const llm::EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    return absl::InvalidArgumentError(StrCat(
        "cosine: dimension mismatch ", a.dim(), " vs ", b.dim()));
  }
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0 || nb == 0) {
    return UndefinedSimilarityError("cosine: zero vector");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

Json ToJson(const UserProfile& p) {
  return Json{{"id", p.id},
              {"topics", p.fields.topics},
              {"preferences", p.fields.preferences},
              {"command", p.fields.command},
              {"final_plan", p.fields.final_plan},
              {"embedding", p.embedding.values},
              {"merge_count", p.merge_count},
              {"updated_at", p.updated_at},
              {"fallback", p.fallback}};
}

absl::StatusOr<UserProfile> ProfileFromJson(const Json& j,
                                            std::string_view path) {
  UserProfile p;
  HEARTH_ASSIGN_OR_RETURN(p.id, GetString(j, "id", path));
  HEARTH_ASSIGN_OR_RETURN(p.fields.topics, GetStringList(j, "topics", path));
  HEARTH_ASSIGN_OR_RETURN(p.fields.preferences,
                          GetString(j, "preferences", path));
  HEARTH_ASSIGN_OR_RETURN(p.fields.command, GetString(j, "command", path));
  HEARTH_ASSIGN_OR_RETURN(p.fields.final_plan, GetString(j, "final_plan", path));
  auto emb = j.find("embedding");
  if (emb == j.end() || !emb->is_array()) {
    return absl::InvalidArgumentError(
        StrCat(path, ".embedding: expected array"));
  }
  for (const Json& v : *emb) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError(
          StrCat(path, ".embedding: expected numbers"));
    }
    p.embedding.values.push_back(v.get<double>());
  }
  HEARTH_ASSIGN_OR_RETURN(int64_t mc, GetInt(j, "merge_count", path));
  if (mc < 1) {
    return absl::InvalidArgumentError(
        StrCat(path, ".merge_count: must be >= 1"));
  }
  p.merge_count = static_cast<int>(mc);
  HEARTH_ASSIGN_OR_RETURN(p.updated_at, GetInt(j, "updated_at", path));
  p.fallback = j.value("fallback", false);
  HEARTH_RETURN_IF_ERROR(ValidateFields(p.fields));
  return p;
}

}  // namespace hearth::profiles
