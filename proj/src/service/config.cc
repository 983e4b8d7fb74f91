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

#include "hearth/service/config.h"

#include <filesystem>

#include "hearth/core/errors.h"
#include "hearth/core/strings.h"

namespace hearth::service {

std::string ResolvePath(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.lexically_normal().string();
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

absl::StatusOr<AppConfig> AppConfigFromJson(const Json& j,
                                            const std::string& base_dir) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("config: expected object");
  }
  AppConfig c;
  c.base_dir = base_dir;
  std::vector<std::string> problems;
  auto string_field = [&](const char* key, std::string* out, bool required) {
    auto it = j.find(key);
    if (it == j.end()) {
      if (required) problems.push_back(StrCat("config.", key, ": missing field"));
      return;
    }
    if (!it->is_string()) {
      problems.push_back(StrCat("config.", key, ": expected string"));
      return;
    }
    *out = it->get<std::string>();
  };
  auto threshold = [&](const char* key, double* out) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number()) {
      problems.push_back(StrCat("config.", key, ": expected number"));
      return;
    }
    *out = it->get<double>();
    if (!(*out > 0 && *out < 1)) {
      problems.push_back(StrCat("config.", key, ": must be in (0, 1), got ", *out));
    }
  };

  std::string catalog, homes, data_dir, listen, clock;
  string_field("catalog", &catalog, false);
  string_field("homes", &homes, true);
  string_field("data_dir", &data_dir, true);
  string_field("listen", &listen, false);
  string_field("auth_token_env", &c.auth_token_env, false);
  string_field("clock", &clock, false);
  threshold("alpha", &c.alpha);
  threshold("beta", &c.beta);
  if (auto it = j.find("privshield_n"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int64_t>() < 0) {
      problems.push_back("config.privshield_n: expected integer >= 0");
    } else {
      c.privshield_n = it->get<size_t>();
    }
  }
  if (auto it = j.find("pii_denylist"); it != j.end()) {
    if (!it->is_array()) {
      problems.push_back("config.pii_denylist: expected array of strings");
    } else {
      for (const Json& v : *it) {
        if (v.is_string()) {
          c.pii_denylist.push_back(v.get<std::string>());
        } else {
          problems.push_back("config.pii_denylist: expected array of strings");
          break;
        }
      }
    }
  }
  auto backends = j.find("backends");
  if (backends == j.end() || !backends->is_object()) {
    problems.push_back("config.backends: expected object");
  } else {
    for (auto [key, out] : {std::pair{"local_slm", &c.local_backend},
                            std::pair{"cloud", &c.cloud_backend},
                            std::pair{"embedding", &c.embedding_backend}}) {
      auto it = backends->find(key);
      if (it == backends->end() || !it->is_object()) {
        problems.push_back(StrCat("config.backends.", key, ": expected object"));
      } else {
        *out = *it;
      }
    }
  }
  if (!clock.empty() && clock != "system" && clock != "manual") {
    problems.push_back(
        StrCat("config.clock: expected \"system\" or \"manual\", got \"", clock,
               "\""));
  }
  c.manual_clock = clock == "manual";
  if (!listen.empty()) {
    const size_t colon = listen.rfind(':');
    int port = -1;
    if (colon != std::string::npos) {
      try {
        port = std::stoi(listen.substr(colon + 1));
      } catch (...) {
        port = -1;
      }
    }
    if (colon == std::string::npos || colon == 0 || port < 0 || port > 65535) {
      problems.push_back(
          StrCat("config.listen: expected host:port, got \"", listen, "\""));
    } else {
      c.listen_host = listen.substr(0, colon);
      c.listen_port = port;
    }
  }
  c.catalog_path = ResolvePath(base_dir, catalog);
  c.homes_path = ResolvePath(base_dir, homes);
  c.data_dir = ResolvePath(base_dir, data_dir);
  if (!c.catalog_path.empty() && !std::filesystem::exists(c.catalog_path)) {
    problems.push_back(StrCat("config.catalog: ", c.catalog_path, " not found"));
  }
  if (!c.homes_path.empty() && !std::filesystem::exists(c.homes_path)) {
    problems.push_back(StrCat("config.homes: ", c.homes_path, " not found"));
  }
  if (!problems.empty()) {
    return absl::InvalidArgumentError(StrJoin(problems, "; "));
  }
  return c;
}

absl::StatusOr<AppConfig> LoadAppConfig(const std::string& path) {
  HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  HEARTH_ASSIGN_OR_RETURN(Json j, ParseJson(text, path));
  return AppConfigFromJson(
      j, std::filesystem::absolute(path).parent_path().string());
}

}  // namespace hearth::service
