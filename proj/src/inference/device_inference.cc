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

#include "hearth/inference/device_inference.h"

#include <algorithm>

#include "hearth/core/errors.h"
#include "hearth/core/prompts.h"
#include "hearth/core/text.h"
#include "hearth/forge/labeling.h"
#include "hearth/core/strings.h"

namespace hearth::inference {
namespace {

std::optional<DeviceId> ResolveInHome(std::string_view name,
                                      const DeviceCatalog& catalog,
                                      const HomeConfig& home) {
  if (auto id = catalog.Resolve(name)) return id;
  const std::string folded = ToLower(Trim(name));
  for (const Device& d : home.custom_devices) {
    if (d.id == folded || ToLower(d.display_name) == folded) return d.id;
  }
  return std::nullopt;
}

std::string StripBullet(std::string line) {
  size_t pos = 0;
  while (pos < line.size() && (line[pos] == '-' || line[pos] == '*' ||
                               line[pos] == ' ')) {
    ++pos;
  }
  size_t digits = pos;
  while (digits < line.size() && line[digits] >= '0' && line[digits] <= '9') {
    ++digits;
  }
  if (digits > pos && digits < line.size() &&
      (line[digits] == '.' || line[digits] == ')')) {
    pos = digits + 1;
  }
  return Trim(std::string_view(line).substr(pos));
}

}  // namespace

absl::StatusOr<DeviceSet> IdentifyComprehensive(llm::LlmBackend& backend,
                                                const Command& command,
                                                const DeviceCatalog& catalog) {
  HEARTH_ASSIGN_OR_RETURN(
      llm::ChatExchange ex,
      backend.Chat(prompts::kAssistantSystem,
                   prompts::DeviceIdentification(
                       forge::CatalogListing(catalog), command.text)));
  CanonicalDevices canonical =
      CanonicalizeDeviceSet(SplitDeviceList(ex.reply), catalog);
  if (canonical.ids.empty()) {
    return NeedsClarificationError(StrCat(
        "which devices should I use for \"", command.text,
        "\"? I could not match any known device."));
  }
  return canonical.ids;
}

DeviceSet MatchHome(const DeviceSet& comprehensive, const HomeConfig& home) {
  DeviceSet out;
  std::set_intersection(comprehensive.begin(), comprehensive.end(),
                        home.available.begin(), home.available.end(),
                        std::inserter(out, out.end()));
  return out;
}

absl::StatusOr<ModelMatch> MatchHomeWithModel(llm::LlmBackend& backend,
                                              const DeviceSet& comprehensive,
                                              const HomeConfig& home,
                                              const DeviceCatalog& catalog) {
  HEARTH_ASSIGN_OR_RETURN(
      llm::ChatExchange ex,
      backend.Chat(prompts::kAssistantSystem,
                   prompts::DeviceMatching(StrJoin(comprehensive, ", "),
                                           StrJoin(home.available, ", "))));
  ModelMatch out;
  out.matched = MatchHome(comprehensive, home);
  for (const std::string& name : SplitDeviceList(ex.reply)) {
    if (auto id = ResolveInHome(name, catalog, home)) {
      out.model_answer.insert(*id);
    } else {
      out.discrepancies.push_back(
          StrCat("model named unknown device '", name, "'"));
    }
  }
  for (const DeviceId& id : out.model_answer) {
    if (!out.matched.contains(id)) {
      out.discrepancies.push_back(
          StrCat("model kept '", id, "' outside the intersection"));
    }
  }
  for (const DeviceId& id : out.matched) {
    if (!out.model_answer.contains(id)) {
      out.discrepancies.push_back(
          StrCat("model dropped '", id, "' from the intersection"));
    }
  }
  return out;
}

std::string RenderHomeState(const HomeConfig& home) {
  std::string out;
  for (const DeviceId& id : home.available) {
    StrAppend(&out, "- ", id);
    auto it = home.state.find(id);
    if (it != home.state.end() && !it->second.empty()) {
      std::vector<std::string> attrs;
      for (const auto& [k, v] : it->second) attrs.push_back(StrCat(k, "=", v));
      StrAppend(&out, ": ", StrJoin(attrs, ", "));
    }
    StrAppend(&out, "\n");
  }
  return out;
}

PlanOutcome ParsePlanReply(std::string_view reply, const DeviceSet& allowed,
                           const DeviceCatalog& catalog,
                           const HomeConfig& home) {
  PlanOutcome out;
  for (const std::string& raw : NonEmptyLines(reply)) {
    if (StartsWithIgnoreCase(raw, "rationale:")) {
      out.plan.rationale = Trim(std::string_view(Trim(raw)).substr(10));
      continue;
    }
    const std::string line = StripBullet(raw);
    std::vector<std::string> parts = SplitN(line, '|', 3);
    if (parts.size() != 3) continue;  // free text around the steps
    for (std::string& p : parts) p = Trim(p);
    std::optional<DeviceId> id = ResolveInHome(parts[0], catalog, home);
    if (!id) {
      out.discrepancies.push_back(
          StrCat("dropped step on unknown device '", parts[0], "'"));
      continue;
    }
    if (!allowed.contains(*id)) {
      out.discrepancies.push_back(
          StrCat("dropped step on '", *id, "', not in the matched set"));
      continue;
    }
    if (parts[1].empty() || parts[2].empty()) {
      out.discrepancies.push_back(
          StrCat("dropped incomplete step on '", *id, "'"));
      continue;
    }
    out.plan.steps.push_back({*id, parts[1], parts[2]});
  }
  return out;
}

absl::StatusOr<PlanOutcome> GeneratePlan(llm::LlmBackend& backend,
                                         const PlanRequest& request,
                                         const DeviceCatalog& catalog) {
  if (request.matched.empty()) {
    return NeedsClarificationError(StrCat(
        "none of the devices needed for \"", request.command.text,
        "\" are available in this home; which device should I use?"));
  }
  prompts::PlanPromptParts parts;
  parts.profiles = request.profiles;
  parts.home_state = RenderHomeState(request.home);
  parts.matched_devices = StrJoin(request.matched, ", ");
  parts.advice = request.advice;
  parts.command = request.command.text;
  const std::string prompt = prompts::PlanGeneration(parts);
  HEARTH_ASSIGN_OR_RETURN(llm::ChatExchange ex,
                          backend.Chat(prompts::kAssistantSystem, prompt));
  PlanOutcome out =
      ParsePlanReply(ex.reply, request.matched, catalog, request.home);
  out.prompt = prompt;
  return out;
}

absl::StatusOr<InferenceTrace> RunInference(llm::LlmBackend& backend,
                                            const Command& command,
                                            const HomeConfig& home,
                                            const DeviceCatalog& catalog,
                                            std::string advice,
                                            std::vector<std::string> profiles) {
  InferenceTrace trace;
  trace.command = command;
  trace.backend_name = backend.descriptor().name;
  HEARTH_ASSIGN_OR_RETURN(trace.comprehensive,
                          IdentifyComprehensive(backend, command, catalog));
  trace.matched = MatchHome(trace.comprehensive, home);
  PlanRequest request{command, trace.matched, home, std::move(advice),
                      std::move(profiles)};
  HEARTH_ASSIGN_OR_RETURN(PlanOutcome plan,
                          GeneratePlan(backend, request, catalog));
  trace.plan = std::move(plan.plan);
  trace.discrepancies = std::move(plan.discrepancies);
  return trace;
}

}  // namespace hearth::inference
