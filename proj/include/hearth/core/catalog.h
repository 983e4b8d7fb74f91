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

#ifndef HEARTH_CORE_CATALOG_H_
#define HEARTH_CORE_CATALOG_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/types.h"

namespace hearth {

// The comprehensive device set. Immutable after construction; devices are
// kept sorted by id.
class DeviceCatalog {
 public:
  static absl::StatusOr<DeviceCatalog> Create(std::vector<Device> devices);

  const std::vector<Device>& devices() const { return devices_; }
  size_t size() const { return devices_.size(); }
  bool empty() const { return devices_.empty(); }
  bool contains(std::string_view id) const;
  const Device* Find(std::string_view id) const;

  // Case-insensitive exact match against ids and display names. Spaces and
  // underscores in `name` are folded to hyphens before the slug comparison.
  std::optional<DeviceId> Resolve(std::string_view name) const;

  DeviceSet ids() const;

  friend bool operator==(const DeviceCatalog& a, const DeviceCatalog& b) {
    return a.devices_ == b.devices_;
  }

 private:
  DeviceCatalog() = default;

  std::vector<Device> devices_;
  std::map<std::string, DeviceId, std::less<>> lookup_;
};

// The shipped 39-device catalog spanning all nine scenarios.
const DeviceCatalog& DefaultCatalog();

struct CanonicalDevices {
  DeviceSet ids;
  std::vector<std::string> unmatched;
};

// Maps free-text device names onto catalog ids. Unknown names are reported
// in `unmatched` (in input order, deduplicated) rather than failing.
CanonicalDevices CanonicalizeDeviceSet(const std::vector<std::string>& names,
                                       const DeviceCatalog& catalog);

// Splits a model reply listing devices on commas, semicolons and newlines,
// stripping bullets, numbering and surrounding quotes.
std::vector<std::string> SplitDeviceList(std::string_view reply);

// Checks available ⊆ catalog ∪ custom devices and state keys ⊆ available.
absl::Status ValidateHome(const HomeConfig& home,
                          const DeviceCatalog& catalog);

// Records a user-mentioned device absent from the catalog: the device is
// added to the home's available set and noted, the catalog is untouched.
absl::StatusOr<DeviceId> AddUserSuggestedDevice(HomeConfig& home,
                                                const DeviceCatalog& catalog,
                                                std::string_view name);

}  // namespace hearth

#endif  // HEARTH_CORE_CATALOG_H_
