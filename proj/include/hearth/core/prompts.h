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

#ifndef HEARTH_CORE_PROMPTS_H_
#define HEARTH_CORE_PROMPTS_H_

#include <string>
#include <string_view>
#include <vector>

// Prompt templates. Every user prompt opens with a "### Task: <name>" line
// so scripted backends can route on it. Bump kPromptSetVersion whenever a
// template's wording changes; exported datasets record it.
namespace hearth::prompts {

inline constexpr std::string_view kPromptSetVersion = "1";

inline constexpr std::string_view kTaskVerticalSynthesis = "vertical-synthesis";
inline constexpr std::string_view kTaskHorizontalSynthesis =
    "horizontal-synthesis";
inline constexpr std::string_view kTaskRelevanceCheck = "relevance-check";
inline constexpr std::string_view kTaskCommandLabeling = "command-labeling";
inline constexpr std::string_view kTaskDeviceIdentification =
    "device-identification";
inline constexpr std::string_view kTaskDeviceMatching = "device-matching";
inline constexpr std::string_view kTaskPlanGeneration = "plan-generation";
inline constexpr std::string_view kTaskCommandRewriting = "command-rewriting";
inline constexpr std::string_view kTaskDecoyGeneration = "decoy-generation";
inline constexpr std::string_view kTaskCloudPlans = "cloud-plans";
inline constexpr std::string_view kTaskProfileGeneration = "profile-generation";
inline constexpr std::string_view kTaskProfileMerging = "profile-merging";
inline constexpr std::string_view kTaskProfileReformat = "profile-reformat";
inline constexpr std::string_view kTaskActivityMonitoring =
    "activity-monitoring";

inline constexpr std::string_view kAssistantSystem =
    "You are a helpful smart home assistant.";

std::string TaskHeader(std::string_view task);

// Command synthesis.
std::string VerticalSynthesis(const std::vector<std::string>& samples,
                              const std::vector<std::string>& scenario_names);
std::string HorizontalSynthesis(const std::vector<std::string>& samples);
std::string RelevanceCheck(std::string_view command);

// Labeling with the comprehensive device list (cloud).
std::string CommandLabeling(std::string_view device_list,
                            std::string_view command);

// Step one of local inference. The instruction part is also the
// "instruction" field of exported training records, so the tuned model
// sees the same format at inference time.
std::string DeviceIdentificationInstruction(std::string_view device_list);
std::string DeviceIdentification(std::string_view device_list,
                                 std::string_view command);
std::string DeviceMatching(std::string_view relevant,
                           std::string_view available);

struct PlanPromptParts {
  std::vector<std::string> profiles;
  std::string home_state;
  std::string matched_devices;
  std::string advice;
  std::string command;
};
std::string PlanGeneration(const PlanPromptParts& parts);

// Obfuscation.
std::string CommandRewriting(std::string_view command);
std::string DecoyGeneration(std::string_view rewritten, size_t count,
                            std::string_view avoid_scenario);
std::string CloudPlans(const std::vector<std::pair<int, std::string>>& lines);

// Preference learning.
std::string ProfileGeneration(std::string_view transcript);
std::string ProfileMerging(std::string_view existing,
                           std::string_view incoming);
std::string ProfileReformat(std::string_view malformed);

// Adversary.
std::string ActivityMonitoring(const std::vector<std::string>& history,
                               const std::vector<std::pair<int, std::string>>&
                                   batch);

}  // namespace hearth::prompts

#endif  // HEARTH_CORE_PROMPTS_H_
