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

#ifndef HEARTH_FORGE_LABELING_H_
#define HEARTH_FORGE_LABELING_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/types.h"
#include "hearth/llm/backend.h"

namespace hearth::forge {

enum class LabelSource { kCloudLlm, kHuman, kMock };

std::string_view LabelSourceName(LabelSource s);
std::optional<LabelSource> ParseLabelSource(std::string_view name);

struct LabeledExample {
  Command command;
  DeviceSet devices;  // non-empty, subset of the catalog
  LabelSource label_source = LabelSource::kMock;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

// A command whose labeling reply named no catalog device.
struct QuarantineRecord {
  Command command;
  std::string reply;
  std::vector<std::string> unmatched;

  friend bool operator==(const QuarantineRecord&,
                         const QuarantineRecord&) = default;
};

struct LabelingResult {
  std::vector<LabeledExample> examples;
  std::vector<QuarantineRecord> quarantine;
};

// Comma-separated catalog ids, the device list shown to models.
std::string CatalogListing(const DeviceCatalog& catalog);

// Labels each command with the relevant subset of the comprehensive
// catalog. Results keep input order; backend failures abort.
absl::StatusOr<LabelingResult> LabelCommands(llm::LlmBackend& backend,
                                             std::span<const Command> commands,
                                             const DeviceCatalog& catalog);

}  // namespace hearth::forge

#endif  // HEARTH_FORGE_LABELING_H_
