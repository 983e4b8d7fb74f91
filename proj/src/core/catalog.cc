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

#include "hearth/core/catalog.h"

#include <algorithm>
#include "hearth/core/strings.h"

namespace hearth {
namespace {

std::string FoldName(std::string_view name) {
  std::string out = ToLower(Trim(name));
  for (char& c : out) {
    if (c == ' ' || c == '_') c = '-';
  }
  return out;
}

std::string SlugFromName(std::string_view name) {
  std::string out;
  bool pending_dash = false;
  for (char c : ToLower(Trim(name))) {
    const bool alnum = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (alnum) {
      if (pending_dash && !out.empty()) out.push_back('-');
      out.push_back(c);
      pending_dash = false;
    } else {
      pending_dash = true;
    }
  }
  return out;
}

std::vector<Device> BuiltinDevices() {
  return {
      // lighting
      {"smart-lamp", "Smart Lamp", {"power", "brightness", "color"}},
      {"ceiling-light", "Ceiling Light", {"power", "brightness"}},
      {"bedside-lamp", "Bedside Lamp", {"power", "brightness", "color"}},
      {"porch-light", "Porch Light", {"power"}},
      {"led-strip", "LED Strip", {"power", "brightness", "color"}},
      // climate
      {"thermostat", "Thermostat", {"mode", "temperature-setpoint"}},
      {"air-conditioner", "Air Conditioner",
       {"power", "mode", "temperature-setpoint", "fan-speed"}},
      {"space-heater", "Space Heater", {"power", "temperature-setpoint"}},
      {"ceiling-fan", "Ceiling Fan", {"power", "fan-speed"}},
      {"humidifier", "Humidifier", {"power", "humidity-setpoint"}},
      {"dehumidifier", "Dehumidifier", {"power", "humidity-setpoint"}},
      // security
      {"smart-lock", "Smart Lock", {"lock"}},
      {"doorbell-camera", "Doorbell Camera", {"power", "recording"}},
      {"security-camera", "Security Camera", {"power", "recording"}},
      {"motion-sensor", "Motion Sensor", {"armed"}},
      {"door-sensor", "Door Sensor", {"armed"}},
      {"window-sensor", "Window Sensor", {"armed"}},
      {"alarm-siren", "Alarm Siren", {"armed", "volume"}},
      {"garage-door", "Garage Door", {"position"}},
      // atmosphere
      {"blinds", "Blinds", {"position"}},
      {"curtains", "Curtains", {"position"}},
      {"aroma-diffuser", "Aroma Diffuser", {"power", "intensity"}},
      {"smart-speaker", "Smart Speaker", {"power", "volume", "playback"}},
      // entertainment
      {"tv", "TV", {"power", "input", "volume"}},
      {"soundbar", "Soundbar", {"power", "volume"}},
      {"streaming-box", "Streaming Box", {"power", "playback"}},
      {"game-console", "Game Console", {"power"}},
      // power
      {"smart-plug", "Smart Plug", {"power"}},
      {"energy-monitor", "Energy Monitor", {"reporting"}},
      {"ev-charger", "EV Charger", {"power", "charge-limit"}},
      // cleaning
      {"robot-vacuum", "Robot Vacuum", {"power", "mode"}},
      {"washing-machine", "Washing Machine", {"power", "cycle"}},
      {"dryer", "Dryer", {"power", "cycle"}},
      {"dishwasher", "Dishwasher", {"power", "cycle"}},
      // kitchen
      {"coffee-maker", "Coffee Maker", {"power", "brew"}},
      {"smart-oven", "Smart Oven", {"power", "temperature-setpoint", "timer"}},
      {"refrigerator", "Refrigerator", {"temperature-setpoint", "mode"}},
      {"kettle", "Kettle", {"power", "temperature-setpoint"}},
      // air quality
      {"air-purifier", "Air Purifier", {"power", "fan-speed", "mode"}},
  };
}

}  // namespace

absl::StatusOr<DeviceCatalog> DeviceCatalog::Create(
    std::vector<Device> devices) {
  DeviceCatalog catalog;
  std::sort(devices.begin(), devices.end(),
            [](const Device& a, const Device& b) { return a.id < b.id; });
  for (size_t i = 0; i < devices.size(); ++i) {
    const Device& d = devices[i];
    if (!IsValidSlug(d.id)) {
      return absl::InvalidArgumentError(
          StrCat("Device.id: '", d.id, "' is not a valid slug"));
    }
    if (i > 0 && devices[i - 1].id == d.id) {
      return absl::InvalidArgumentError(
          StrCat("DeviceCatalog: duplicate device id '", d.id, "'"));
    }
  }
  catalog.devices_ = std::move(devices);
  for (const Device& d : catalog.devices_) {
    catalog.lookup_.emplace(d.id, d.id);
    catalog.lookup_.emplace(FoldName(d.display_name), d.id);
  }
  return catalog;
}

bool DeviceCatalog::contains(std::string_view id) const {
  return Find(id) != nullptr;
}

const Device* DeviceCatalog::Find(std::string_view id) const {
  auto it = std::lower_bound(
      devices_.begin(), devices_.end(), id,
      [](const Device& d, std::string_view key) { return d.id < key; });
  if (it == devices_.end() || it->id != id) return nullptr;
  return &*it;
}

std::optional<DeviceId> DeviceCatalog::Resolve(std::string_view name) const {
  const std::string folded = FoldName(name);
  if (folded.empty()) return std::nullopt;
  auto it = lookup_.find(folded);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

DeviceSet DeviceCatalog::ids() const {
  DeviceSet out;
  for (const Device& d : devices_) out.insert(d.id);
  return out;
}

const DeviceCatalog& DefaultCatalog() {
  static const DeviceCatalog* catalog =
      new DeviceCatalog(*DeviceCatalog::Create(BuiltinDevices()));
  return *catalog;
}

CanonicalDevices CanonicalizeDeviceSet(const std::vector<std::string>& names,
                                       const DeviceCatalog& catalog) {
  CanonicalDevices out;
  for (const std::string& name : names) {
    if (std::optional<DeviceId> id = catalog.Resolve(name)) {
      out.ids.insert(*id);
    } else if (std::find(out.unmatched.begin(), out.unmatched.end(), name) ==
               out.unmatched.end()) {
      out.unmatched.push_back(name);
    }
  }
  return out;
}

std::vector<std::string> SplitDeviceList(std::string_view reply) {
  std::vector<std::string> out;
  for (std::string_view piece : SplitAny(reply, ",;\n")) {
    std::string item = Trim(piece);
    // Bullets and enumerations: "- x", "* x", "1. x", "2) x".
    size_t pos = 0;
    while (pos < item.size() && (item[pos] == '-' || item[pos] == '*' ||
                                 item[pos] == ' ')) {
      ++pos;
    }
    size_t digits = pos;
    while (digits < item.size() && item[digits] >= '0' && item[digits] <= '9') {
      ++digits;
    }
    if (digits > pos && digits < item.size() &&
        (item[digits] == '.' || item[digits] == ')')) {
      pos = digits + 1;
    }
    item = Trim(std::string_view(item).substr(pos));
    while (!item.empty() && (item.front() == '"' || item.front() == '\'' ||
                             item.front() == '`')) {
      item.erase(item.begin());
    }
    while (!item.empty() && (item.back() == '"' || item.back() == '\'' ||
                             item.back() == '`' || item.back() == '.')) {
      item.pop_back();
    }
    item = Trim(item);
    if (!item.empty()) out.push_back(std::move(item));
  }
  return out;
}

absl::Status ValidateHome(const HomeConfig& home,
                          const DeviceCatalog& catalog) {
  if (home.home_id.empty()) {
    return absl::InvalidArgumentError("HomeConfig.home_id: must not be empty");
  }
  DeviceSet custom;
  for (const Device& d : home.custom_devices) custom.insert(d.id);
  for (const DeviceId& id : home.available) {
    if (!catalog.contains(id) && !custom.contains(id)) {
      return absl::InvalidArgumentError(StrCat(
          "HomeConfig.available: '", id, "' is not a catalog device"));
    }
  }
  for (const auto& [id, attrs] : home.state) {
    if (!home.available.contains(id)) {
      return absl::InvalidArgumentError(StrCat(
          "HomeConfig.state: key '", id, "' is not an available device"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<DeviceId> AddUserSuggestedDevice(HomeConfig& home,
                                                const DeviceCatalog& catalog,
                                                std::string_view name) {
  if (std::optional<DeviceId> known = catalog.Resolve(name)) {
    home.available.insert(*known);
    return *known;
  }
  const std::string slug = SlugFromName(name);
  if (slug.empty()) {
    return absl::InvalidArgumentError(
        StrCat("device name '", name, "' has no usable characters"));
  }
  for (const Device& d : home.custom_devices) {
    if (d.id == slug) return slug;
  }
  home.custom_devices.push_back({slug, Trim(name), {}});
  home.available.insert(slug);
  home.notes.push_back(
      StrCat("user mentioned device not in catalog: ", Trim(name)));
  return slug;
}

}  // namespace hearth
