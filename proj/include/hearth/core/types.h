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

#ifndef HEARTH_CORE_TYPES_H_
#define HEARTH_CORE_TYPES_H_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace hearth {

using DeviceId = std::string;
using DeviceSet = std::set<DeviceId>;

// The nine scenario tags every command is filed under.
enum class Scenario {
  kLighting,
  kClimate,
  kSecurity,
  kAtmosphere,
  kPower,
  kEntertainment,
  kCleaning,
  kKitchen,
  kAirQuality,
};

inline constexpr std::array<Scenario, 9> kAllScenarios = {
    Scenario::kLighting,      Scenario::kClimate,  Scenario::kSecurity,
    Scenario::kAtmosphere,    Scenario::kPower,    Scenario::kEntertainment,
    Scenario::kCleaning,      Scenario::kKitchen,  Scenario::kAirQuality,
};

std::string_view ScenarioName(Scenario s);
std::optional<Scenario> ParseScenario(std::string_view name);

enum class Provenance { kSeed, kVerticalSynth, kHorizontalSynth, kUser };

std::string_view ProvenanceName(Provenance p);
std::optional<Provenance> ParseProvenance(std::string_view name);

struct Command {
  std::string id;
  std::string text;
  Scenario scenario = Scenario::kLighting;
  Provenance provenance = Provenance::kUser;

  friend bool operator==(const Command&, const Command&) = default;
};

// Checks the non-empty-after-trim text invariant and a non-empty id.
absl::Status ValidateCommand(const Command& command);

struct Device {
  DeviceId id;
  std::string display_name;
  std::vector<std::string> capabilities;

  friend bool operator==(const Device&, const Device&) = default;
};

// True when `id` is a non-empty slug over [a-z0-9-].
bool IsValidSlug(std::string_view id);

struct HomeConfig {
  std::string home_id;
  DeviceSet available;
  // Current snapshot of device attributes; keys must be in `available`.
  std::map<DeviceId, std::map<std::string, std::string>> state;
  // Devices users mentioned that are not in the catalog. Each is also
  // listed in `available`.
  std::vector<Device> custom_devices;
  std::vector<std::string> notes;

  friend bool operator==(const HomeConfig&, const HomeConfig&) = default;
};

struct PlanStep {
  DeviceId device_id;
  std::string attribute;
  std::string value;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct ActionPlan {
  std::vector<PlanStep> steps;
  std::string rationale;

  // Union of the step device ids.
  DeviceSet devices() const;
  // One line per step followed by the rationale.
  std::string Render() const;

  friend bool operator==(const ActionPlan&, const ActionPlan&) = default;
};

std::string Trim(std::string_view s);
std::string ToLower(std::string_view s);

}  // namespace hearth

#endif  // HEARTH_CORE_TYPES_H_
