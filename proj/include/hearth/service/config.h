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

#ifndef HEARTH_SERVICE_CONFIG_H_
#define HEARTH_SERVICE_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/serialize.h"

namespace hearth::service {

// Config file (JSON). Relative paths resolve against the file's directory.
//   {
//     "catalog": "catalog.json",            // optional; built-in if absent
//     "homes": "homes.json",                // array of homes
//     "backends": {"local_slm": {...}, "cloud": {...}, "embedding": {...}},
//     "alpha": 0.7, "beta": 0.6, "privshield_n": 4,
//     "pii_denylist": ["Alice"],
//     "data_dir": "state",
//     "listen": "127.0.0.1:8080",
//     "auth_token_env": "HEARTH_TOKEN",     // optional bearer token
//     "clock": "system" | "manual"
//   }
struct AppConfig {
  std::string base_dir;
  std::string catalog_path;
  std::string homes_path;
  Json local_backend;
  Json cloud_backend;
  Json embedding_backend;
  double alpha = 0.7;
  double beta = 0.6;
  size_t privshield_n = 4;
  std::vector<std::string> pii_denylist;
  std::string data_dir;
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::string auth_token_env;
  bool manual_clock = false;
};

// Collects every validation problem into one InvalidArgument message.
absl::StatusOr<AppConfig> AppConfigFromJson(const Json& j,
                                            const std::string& base_dir);
absl::StatusOr<AppConfig> LoadAppConfig(const std::string& path);

std::string ResolvePath(const std::string& base_dir, const std::string& path);

}  // namespace hearth::service

#endif  // HEARTH_SERVICE_CONFIG_H_
