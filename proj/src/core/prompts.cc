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

#include "hearth/core/prompts.h"

#include "hearth/core/strings.h"

namespace hearth::prompts {
namespace {

void AppendNumbered(std::string* out, const std::vector<std::string>& items) {
  for (size_t i = 0; i < items.size(); ++i) {
    StrAppend(out, i + 1, ". ", items[i], "\n");
  }
}

}  // namespace

std::string TaskHeader(std::string_view task) {
  return StrCat("### Task: ", task, "\n");
}

std::string VerticalSynthesis(const std::vector<std::string>& samples,
                              const std::vector<std::string>& scenario_names) {
  std::string out = TaskHeader(kTaskVerticalSynthesis);
  StrAppend(&out, "Here are some smart home commands written by users:\n");
  AppendNumbered(&out, samples);
  StrAppend(
      &out,
      "Write one new, realistic smart home command that targets a different "
      "scenario from the examples above. Pick the scenario from: ",
      StrJoin(scenario_names, ", "),
      ".\nKeep it short and under-specified, like a real user would say it.\n"
      "Answer exactly in this form:\nScenario: <scenario>\nCommand: <command>\n");
  return out;
}

std::string HorizontalSynthesis(const std::vector<std::string>& samples) {
  std::string out = TaskHeader(kTaskHorizontalSynthesis);
  StrAppend(&out, "Here are some smart home commands written by users:\n");
  AppendNumbered(&out, samples);
  StrAppend(
      &out,
      "Rewrite command 1 in a different expression style (tone, wording, "
      "sentence structure) while keeping its original meaning.\n"
      "Original: ",
      samples.empty() ? std::string() : samples.front(),
      "\nAnswer exactly in this form:\nCommand: <rewritten command>\n");
  return out;
}

std::string RelevanceCheck(std::string_view command) {
  return StrCat(TaskHeader(kTaskRelevanceCheck),
                      "Is the following request something a smart home "
                      "assistant controlling household devices could act on? "
                      "Answer yes or no.\nCommand: ",
                      command, "\n");
}

std::string CommandLabeling(std::string_view device_list,
                            std::string_view command) {
  return StrCat(
      TaskHeader(kTaskCommandLabeling),
      "A large home is equipped with the following devices:\n", device_list,
      "\nIdentify every device from this list that is relevant to fulfilling "
      "the user command, including devices the user did not name explicitly. "
      "Answer with a comma-separated list of device names from the list and "
      "nothing else.\nCommand: ",
      command, "\n");
}

std::string DeviceIdentificationInstruction(std::string_view device_list) {
  return StrCat(
      "You control a home with the following devices:\n", device_list,
      "\nStep 1: list every device from this list that is relevant to the "
      "user command. Answer with a comma-separated list of device names.");
}

std::string DeviceIdentification(std::string_view device_list,
                                 std::string_view command) {
  return StrCat(TaskHeader(kTaskDeviceIdentification),
                      DeviceIdentificationInstruction(device_list),
                      "\nCommand: ", command, "\n");
}

std::string DeviceMatching(std::string_view relevant,
                           std::string_view available) {
  return StrCat(
      TaskHeader(kTaskDeviceMatching),
      "Step 2: keep only the relevant devices that are available in this "
      "home.\nRelevant devices: ",
      relevant, "\nAvailable devices: ", available,
      "\nAnswer with a comma-separated list of device names.\n");
}

std::string PlanGeneration(const PlanPromptParts& parts) {
  std::string out = TaskHeader(kTaskPlanGeneration);
  if (!parts.profiles.empty()) {
    StrAppend(&out, "User profiles from earlier conversations:\n");
    for (size_t i = 0; i < parts.profiles.size(); ++i) {
      StrAppend(&out, "[Profile ", i + 1, "]\n", parts.profiles[i], "\n");
    }
  }
  StrAppend(&out, "Home configuration:\n", parts.home_state,
                  "Devices to use: ", parts.matched_devices, "\n");
  if (!parts.advice.empty()) {
    StrAppend(&out, "Advice to follow: ", parts.advice, "\n");
  }
  StrAppend(
      &out, "Command: ", parts.command,
      "\nStep 3: write an action plan using only the devices listed above. "
      "Give one step per line as `device | attribute | value`, then a final "
      "line `Rationale: <why>`.\n");
  return out;
}

std::string CommandRewriting(std::string_view command) {
  return StrCat(
      TaskHeader(kTaskCommandRewriting),
      "Remove any personal information (names, addresses, phone numbers, "
      "e-mail addresses, locations) from the command below, drop filler "
      "words, and paraphrase it as a neutral request. Answer with the "
      "rewritten command only.\nCommand: ",
      command, "\n");
}

std::string DecoyGeneration(std::string_view rewritten, size_t count,
                            std::string_view avoid_scenario) {
  std::string out = TaskHeader(kTaskDecoyGeneration);
  StrAppend(
      &out, "Reference command: ", rewritten, "\nWrite ", count,
      " different smart home commands in a similar style that belong to "
      "unrelated scenarios");
  if (!avoid_scenario.empty()) {
    StrAppend(&out, " (not ", avoid_scenario, ")");
  }
  StrAppend(&out, ". Answer with one command per line and nothing else.\n");
  return out;
}

std::string CloudPlans(const std::vector<std::pair<int, std::string>>& lines) {
  std::string out = TaskHeader(kTaskCloudPlans);
  StrAppend(
      &out,
      "Generate a detailed smart home action plan for each of the following "
      "commands. Answer every command, and start each answer on its own line "
      "with `Plan for command <id>:`.\n");
  for (const auto& [id, text] : lines) {
    StrAppend(&out, "Command ", id, ": ", text, "\n");
  }
  return out;
}

std::string ProfileGeneration(std::string_view transcript) {
  return StrCat(
      TaskHeader(kTaskProfileGeneration),
      "Digest the conversation below into a concise user profile. Answer "
      "exactly with these four lines:\nTopics: <comma-separated keywords>\n"
      "Preferences: <what the user prefers>\nCommand: <the user command>\n"
      "Final plan: <the approved action plan>\nConversation:\n",
      transcript);
}

std::string ProfileMerging(std::string_view existing,
                           std::string_view incoming) {
  return StrCat(
      TaskHeader(kTaskProfileMerging),
      "Merge the two user profiles below into one consolidated profile that "
      "keeps every distinct preference. Answer exactly with these four "
      "lines:\nTopics: ...\nPreferences: ...\nCommand: ...\nFinal plan: ...\n"
      "Existing profile:\n",
      existing, "New profile:\n", incoming);
}

std::string ProfileReformat(std::string_view malformed) {
  return StrCat(
      TaskHeader(kTaskProfileReformat),
      "Reformat the text below into exactly four lines starting with "
      "`Topics:`, `Preferences:`, `Command:` and `Final plan:`.\nText:\n",
      malformed);
}

std::string ActivityMonitoring(
    const std::vector<std::string>& history,
    const std::vector<std::pair<int, std::string>>& batch) {
  std::string out = TaskHeader(kTaskActivityMonitoring);
  StrAppend(
      &out,
      "You are monitoring the requests a smart home user sends to an "
      "assistant in order to infer what the user is doing at home. Each "
      "round mixes the user's real command with fake commands.\n");
  if (!history.empty()) {
    StrAppend(&out, "Commands you believe were real in earlier rounds:\n");
    for (const std::string& h : history) StrAppend(&out, "- ", h, "\n");
  }
  StrAppend(&out, "Current round:\n");
  for (const auto& [id, text] : batch) {
    StrAppend(&out, "Command ", id, ": ", text, "\n");
  }
  StrAppend(&out,
                  "Which command is the real one? Answer with `Real: <id>`.\n");
  return out;
}

}  // namespace hearth::prompts
