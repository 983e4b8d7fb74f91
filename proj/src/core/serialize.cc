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

#include "hearth/core/serialize.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include "hearth/core/strings.h"

namespace hearth {
namespace {

std::string Child(std::string_view path, std::string_view key) {
  return StrCat(path, ".", key);
}

std::string Index(std::string_view path, size_t i) {
  return StrCat(path, "[", i, "]");
}

absl::Status RequireObject(const Json& j, std::string_view path) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError(
        StrCat(path, ": expected object, got ", j.type_name()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<std::string> GetString(const Json& j, std::string_view key,
                                      std::string_view path) {
  HEARTH_RETURN_IF_ERROR(RequireObject(j, path));
  auto it = j.find(std::string(key));
  if (it == j.end()) {
    return absl::InvalidArgumentError(
        StrCat(Child(path, key), ": missing field"));
  }
  if (!it->is_string()) {
    return absl::InvalidArgumentError(StrCat(
        Child(path, key), ": expected string, got ", it->type_name()));
  }
  return it->get<std::string>();
}

absl::StatusOr<double> GetNumber(const Json& j, std::string_view key,
                                 std::string_view path) {
  HEARTH_RETURN_IF_ERROR(RequireObject(j, path));
  auto it = j.find(std::string(key));
  if (it == j.end()) {
    return absl::InvalidArgumentError(
        StrCat(Child(path, key), ": missing field"));
  }
  if (!it->is_number()) {
    return absl::InvalidArgumentError(StrCat(
        Child(path, key), ": expected number, got ", it->type_name()));
  }
  return it->get<double>();
}

absl::StatusOr<int64_t> GetInt(const Json& j, std::string_view key,
                               std::string_view path) {
  HEARTH_RETURN_IF_ERROR(RequireObject(j, path));
  auto it = j.find(std::string(key));
  if (it == j.end()) {
    return absl::InvalidArgumentError(
        StrCat(Child(path, key), ": missing field"));
  }
  if (!it->is_number_integer()) {
    return absl::InvalidArgumentError(StrCat(
        Child(path, key), ": expected integer, got ", it->type_name()));
  }
  return it->get<int64_t>();
}

absl::StatusOr<std::vector<std::string>> GetStringList(const Json& j,
                                                       std::string_view key,
                                                       std::string_view path) {
  HEARTH_RETURN_IF_ERROR(RequireObject(j, path));
  auto it = j.find(std::string(key));
  const std::string field = Child(path, key);
  if (it == j.end()) {
    return absl::InvalidArgumentError(StrCat(field, ": missing field"));
  }
  if (!it->is_array()) {
    return absl::InvalidArgumentError(
        StrCat(field, ": expected array, got ", it->type_name()));
  }
  std::vector<std::string> out;
  for (size_t i = 0; i < it->size(); ++i) {
    const Json& item = (*it)[i];
    if (!item.is_string()) {
      return absl::InvalidArgumentError(StrCat(
          Index(field, i), ": expected string, got ", item.type_name()));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

Json ToJson(const Command& v) {
  return Json{{"id", v.id},
              {"text", v.text},
              {"scenario", std::string(ScenarioName(v.scenario))},
              {"provenance", std::string(ProvenanceName(v.provenance))}};
}

Json ToJson(const Device& v) {
  return Json{{"id", v.id},
              {"display_name", v.display_name},
              {"capabilities", v.capabilities}};
}

Json ToJson(const DeviceCatalog& v) {
  Json out = Json::array();
  for (const Device& d : v.devices()) out.push_back(ToJson(d));
  return out;
}

Json ToJson(const DeviceSet& v) {
  Json out = Json::array();
  for (const DeviceId& id : v) out.push_back(id);
  return out;
}

Json ToJson(const HomeConfig& v) {
  Json state = Json::object();
  for (const auto& [id, attrs] : v.state) {
    Json a = Json::object();
    for (const auto& [k, val] : attrs) a[k] = val;
    state[id] = a;
  }
  Json custom = Json::array();
  for (const Device& d : v.custom_devices) custom.push_back(ToJson(d));
  return Json{{"home_id", v.home_id},
              {"available", ToJson(v.available)},
              {"state", state},
              {"custom_devices", custom},
              {"notes", v.notes}};
}

Json ToJson(const PlanStep& v) {
  return Json{
      {"device_id", v.device_id}, {"attribute", v.attribute}, {"value", v.value}};
}

Json ToJson(const ActionPlan& v) {
  Json steps = Json::array();
  for (const PlanStep& s : v.steps) steps.push_back(ToJson(s));
  return Json{{"steps", steps},
              {"rationale", v.rationale},
              {"devices", ToJson(v.devices())}};
}

absl::StatusOr<Command> CommandFromJson(const Json& j, std::string_view path) {
  Command c;
  HEARTH_ASSIGN_OR_RETURN(c.id, GetString(j, "id", path));
  HEARTH_ASSIGN_OR_RETURN(c.text, GetString(j, "text", path));
  HEARTH_ASSIGN_OR_RETURN(std::string scenario,
                          GetString(j, "scenario", path));
  std::optional<Scenario> s = ParseScenario(scenario);
  if (!s) {
    return absl::InvalidArgumentError(StrCat(
        Child(path, "scenario"), ": unknown scenario '", scenario, "'"));
  }
  c.scenario = *s;
  HEARTH_ASSIGN_OR_RETURN(std::string provenance,
                          GetString(j, "provenance", path));
  std::optional<Provenance> p = ParseProvenance(provenance);
  if (!p) {
    return absl::InvalidArgumentError(StrCat(
        Child(path, "provenance"), ": unknown provenance '", provenance, "'"));
  }
  c.provenance = *p;
  HEARTH_RETURN_IF_ERROR(ValidateCommand(c));
  return c;
}

absl::StatusOr<Device> DeviceFromJson(const Json& j, std::string_view path) {
  Device d;
  HEARTH_ASSIGN_OR_RETURN(d.id, GetString(j, "id", path));
  if (!IsValidSlug(d.id)) {
    return absl::InvalidArgumentError(StrCat(
        Child(path, "id"), ": '", d.id, "' is not a valid slug"));
  }
  HEARTH_ASSIGN_OR_RETURN(d.display_name, GetString(j, "display_name", path));
  HEARTH_ASSIGN_OR_RETURN(d.capabilities,
                          GetStringList(j, "capabilities", path));
  return d;
}

absl::StatusOr<DeviceCatalog> CatalogFromJson(const Json& j,
                                              std::string_view path) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(
        StrCat(path, ": expected array, got ", j.type_name()));
  }
  std::vector<Device> devices;
  for (size_t i = 0; i < j.size(); ++i) {
    HEARTH_ASSIGN_OR_RETURN(Device d, DeviceFromJson(j[i], Index(path, i)));
    devices.push_back(std::move(d));
  }
  return DeviceCatalog::Create(std::move(devices));
}

absl::StatusOr<DeviceSet> DeviceSetFromJson(const Json& j,
                                            std::string_view path) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError(
        StrCat(path, ": expected array, got ", j.type_name()));
  }
  DeviceSet out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) {
      return absl::InvalidArgumentError(
          StrCat(Index(path, i), ": expected string"));
    }
    out.insert(j[i].get<std::string>());
  }
  return out;
}

absl::StatusOr<HomeConfig> HomeFromJson(const Json& j, std::string_view path) {
  HomeConfig h;
  HEARTH_ASSIGN_OR_RETURN(h.home_id, GetString(j, "home_id", path));
  auto available = j.find("available");
  if (available == j.end()) {
    return absl::InvalidArgumentError(
        StrCat(Child(path, "available"), ": missing field"));
  }
  HEARTH_ASSIGN_OR_RETURN(
      h.available, DeviceSetFromJson(*available, Child(path, "available")));
  if (auto state = j.find("state"); state != j.end()) {
    const std::string state_path = Child(path, "state");
    if (!state->is_object()) {
      return absl::InvalidArgumentError(
          StrCat(state_path, ": expected object"));
    }
    for (const auto& [id, attrs] : state->items()) {
      const std::string device_path = Child(state_path, id);
      if (!attrs.is_object()) {
        return absl::InvalidArgumentError(
            StrCat(device_path, ": expected object"));
      }
      for (const auto& [k, val] : attrs.items()) {
        if (!val.is_string()) {
          return absl::InvalidArgumentError(
              StrCat(Child(device_path, k), ": expected string"));
        }
        h.state[id][k] = val.get<std::string>();
      }
    }
  }
  if (auto custom = j.find("custom_devices"); custom != j.end()) {
    if (!custom->is_array()) {
      return absl::InvalidArgumentError(
          StrCat(Child(path, "custom_devices"), ": expected array"));
    }
    for (size_t i = 0; i < custom->size(); ++i) {
      HEARTH_ASSIGN_OR_RETURN(
          Device d,
          DeviceFromJson((*custom)[i], Index(Child(path, "custom_devices"), i)));
      h.custom_devices.push_back(std::move(d));
    }
  }
  if (j.contains("notes")) {
    HEARTH_ASSIGN_OR_RETURN(h.notes, GetStringList(j, "notes", path));
  }
  for (const auto& [id, attrs] : h.state) {
    if (!h.available.contains(id)) {
      return absl::InvalidArgumentError(StrCat(
          Child(path, "state"), ": key '", id, "' is not in available"));
    }
  }
  return h;
}

absl::StatusOr<ActionPlan> PlanFromJson(const Json& j, std::string_view path) {
  HEARTH_RETURN_IF_ERROR(RequireObject(j, path));
  ActionPlan plan;
  auto steps = j.find("steps");
  if (steps == j.end() || !steps->is_array()) {
    return absl::InvalidArgumentError(
        StrCat(Child(path, "steps"), ": expected array"));
  }
  for (size_t i = 0; i < steps->size(); ++i) {
    const std::string step_path = Index(Child(path, "steps"), i);
    PlanStep s;
    HEARTH_ASSIGN_OR_RETURN(s.device_id,
                            GetString((*steps)[i], "device_id", step_path));
    HEARTH_ASSIGN_OR_RETURN(s.attribute,
                            GetString((*steps)[i], "attribute", step_path));
    HEARTH_ASSIGN_OR_RETURN(s.value, GetString((*steps)[i], "value", step_path));
    plan.steps.push_back(std::move(s));
  }
  HEARTH_ASSIGN_OR_RETURN(plan.rationale, GetString(j, "rationale", path));
  if (auto devices = j.find("devices"); devices != j.end()) {
    HEARTH_ASSIGN_OR_RETURN(DeviceSet listed,
                            DeviceSetFromJson(*devices, Child(path, "devices")));
    if (listed != plan.devices()) {
      return absl::InvalidArgumentError(StrCat(
          Child(path, "devices"), ": does not match the step device ids"));
    }
  }
  return plan;
}

absl::StatusOr<Json> ParseJson(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    return absl::InvalidArgumentError(
        StrCat(source.empty() ? "" : StrCat(source, ": "),
               "parse error at byte ", e.byte, ": ", e.what()));
  }
}

std::string CanonicalDump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::replace);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  // Write-then-rename so readers never observe a torn file.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return absl::UnavailableError(StrCat("cannot write ", tmp));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) return absl::DataLossError(StrCat("short write to ", tmp));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    return absl::UnavailableError(
        StrCat("rename ", tmp, " -> ", path, ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::Status AppendLine(const std::string& path, std::string_view line) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) return absl::UnavailableError(StrCat("cannot append ", path));
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.put('\n');
  out.flush();
  if (!out) return absl::DataLossError(StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<DeviceCatalog> LoadCatalogFile(const std::string& path) {
  HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  HEARTH_ASSIGN_OR_RETURN(Json j, ParseJson(text, path));
  return CatalogFromJson(j, path);
}

}  // namespace hearth
