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

#ifndef HEARTH_CORE_SERIALIZE_H_
#define HEARTH_CORE_SERIALIZE_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/errors.h"
#include "hearth/core/types.h"
#include "json.hpp"

namespace hearth {

using Json = nlohmann::json;

// Canonical JSON forms. Objects are emitted with sorted keys and no
// insignificant whitespace, so equal values serialize to equal bytes.
Json ToJson(const Command& v);
Json ToJson(const Device& v);
Json ToJson(const DeviceCatalog& v);
Json ToJson(const HomeConfig& v);
Json ToJson(const PlanStep& v);
Json ToJson(const ActionPlan& v);
Json ToJson(const DeviceSet& v);

// Each FromJson names the offending field path on failure.
absl::StatusOr<Command> CommandFromJson(const Json& j,
                                        std::string_view path = "Command");
absl::StatusOr<Device> DeviceFromJson(const Json& j,
                                      std::string_view path = "Device");
absl::StatusOr<DeviceCatalog> CatalogFromJson(
    const Json& j, std::string_view path = "DeviceCatalog");
absl::StatusOr<HomeConfig> HomeFromJson(const Json& j,
                                        std::string_view path = "HomeConfig");
absl::StatusOr<ActionPlan> PlanFromJson(const Json& j,
                                        std::string_view path = "ActionPlan");
absl::StatusOr<DeviceSet> DeviceSetFromJson(const Json& j,
                                            std::string_view path);

// Parses text into JSON; a syntax error reports the byte position.
absl::StatusOr<Json> ParseJson(std::string_view text,
                               std::string_view source = {});

std::string CanonicalDump(const Json& j);

template <typename T>
std::string Serialize(const T& value) {
  return CanonicalDump(ToJson(value));
}

template <typename T>
struct JsonCodec;

template <>
struct JsonCodec<Command> {
  static absl::StatusOr<Command> From(const Json& j) {
    return CommandFromJson(j);
  }
};
template <>
struct JsonCodec<Device> {
  static absl::StatusOr<Device> From(const Json& j) {
    return DeviceFromJson(j);
  }
};
template <>
struct JsonCodec<DeviceCatalog> {
  static absl::StatusOr<DeviceCatalog> From(const Json& j) {
    return CatalogFromJson(j);
  }
};
template <>
struct JsonCodec<HomeConfig> {
  static absl::StatusOr<HomeConfig> From(const Json& j) {
    return HomeFromJson(j);
  }
};
template <>
struct JsonCodec<ActionPlan> {
  static absl::StatusOr<ActionPlan> From(const Json& j) {
    return PlanFromJson(j);
  }
};

template <typename T>
absl::StatusOr<T> Deserialize(std::string_view text) {
  absl::StatusOr<Json> j = ParseJson(text);
  if (!j.ok()) return j.status();
  return JsonCodec<T>::From(*j);
}

// Catalog file: a JSON array of devices.
absl::StatusOr<DeviceCatalog> LoadCatalogFile(const std::string& path);
absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);
absl::Status AppendLine(const std::string& path, std::string_view line);

// Field helpers shared by the other modules' codecs.
absl::StatusOr<std::string> GetString(const Json& j, std::string_view key,
                                      std::string_view path);
absl::StatusOr<double> GetNumber(const Json& j, std::string_view key,
                                 std::string_view path);
absl::StatusOr<int64_t> GetInt(const Json& j, std::string_view key,
                               std::string_view path);
absl::StatusOr<std::vector<std::string>> GetStringList(const Json& j,
                                                       std::string_view key,
                                                       std::string_view path);

}  // namespace hearth

#endif  // HEARTH_CORE_SERIALIZE_H_
