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

#include "hearth/core/types.h"

#include <algorithm>
#include <cctype>
#include "hearth/core/strings.h"

namespace hearth {

std::string_view ScenarioName(Scenario s) {
  switch (s) {
    case Scenario::kLighting:
      return "lighting";
    case Scenario::kClimate:
      return "climate";
    case Scenario::kSecurity:
      return "security";
    case Scenario::kAtmosphere:
      return "atmosphere";
    case Scenario::kPower:
      return "power";
    case Scenario::kEntertainment:
      return "entertainment";
    case Scenario::kCleaning:
      return "cleaning";
    case Scenario::kKitchen:
      return "kitchen";
    case Scenario::kAirQuality:
      return "air-quality";
  }
  return "lighting";
}

std::optional<Scenario> ParseScenario(std::string_view name) {
  const std::string lowered = ToLower(Trim(name));
  for (Scenario s : kAllScenarios) {
    if (ScenarioName(s) == lowered) return s;
  }
  return std::nullopt;
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kSeed:
      return "seed";
    case Provenance::kVerticalSynth:
      return "vertical-synth";
    case Provenance::kHorizontalSynth:
      return "horizontal-synth";
    case Provenance::kUser:
      return "user";
  }
  return "user";
}

std::optional<Provenance> ParseProvenance(std::string_view name) {
  for (Provenance p : {Provenance::kSeed, Provenance::kVerticalSynth,
                       Provenance::kHorizontalSynth, Provenance::kUser}) {
    if (ProvenanceName(p) == name) return p;
  }
  return std::nullopt;
}

absl::Status ValidateCommand(const Command& command) {
  if (command.id.empty()) {
    return absl::InvalidArgumentError("Command.id: must not be empty");
  }
  if (Trim(command.text).empty()) {
    return absl::InvalidArgumentError(
        StrCat("Command.text: empty after trimming (id ", command.id,
                     ")"));
  }
  return absl::OkStatus();
}

bool IsValidSlug(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
  });
}

DeviceSet ActionPlan::devices() const {
  DeviceSet out;
  for (const PlanStep& step : steps) out.insert(step.device_id);
  return out;
}

std::string ActionPlan::Render() const {
  std::string out;
  for (const PlanStep& step : steps) {
    StrAppend(&out, step.device_id, " | ", step.attribute, " | ",
                    step.value, "\n");
  }
  if (!rationale.empty()) StrAppend(&out, "Rationale: ", rationale, "\n");
  return out;
}

std::string Trim(std::string_view s) {
  size_t begin = 0;
  size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return std::string(s.substr(begin, end - begin));
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace hearth
