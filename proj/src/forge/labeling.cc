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

#include "hearth/forge/labeling.h"

#include "hearth/core/errors.h"
#include "hearth/core/prompts.h"
#include "hearth/core/strings.h"

namespace hearth::forge {

std::string_view LabelSourceName(LabelSource s) {
  switch (s) {
    case LabelSource::kCloudLlm:
      return "cloud-llm";
    case LabelSource::kHuman:
      return "human";
    case LabelSource::kMock:
      return "mock";
  }
  return "mock";
}

std::optional<LabelSource> ParseLabelSource(std::string_view name) {
  for (LabelSource s :
       {LabelSource::kCloudLlm, LabelSource::kHuman, LabelSource::kMock}) {
    if (LabelSourceName(s) == name) return s;
  }
  return std::nullopt;
}

std::string CatalogListing(const DeviceCatalog& catalog) {
  std::vector<std::string> ids;
  for (const Device& d : catalog.devices()) ids.push_back(d.id);
  return StrJoin(ids, ", ");
}

absl::StatusOr<LabelingResult> LabelCommands(llm::LlmBackend& backend,
                                             std::span<const Command> commands,
                                             const DeviceCatalog& catalog) {
  if (catalog.empty()) {
    return absl::FailedPreconditionError("labeling needs a non-empty catalog");
  }
  const LabelSource source =
      backend.descriptor().kind == llm::BackendKind::kMock
          ? LabelSource::kMock
          : LabelSource::kCloudLlm;
  const std::string listing = CatalogListing(catalog);
  LabelingResult result;
  for (const Command& command : commands) {
    HEARTH_ASSIGN_OR_RETURN(
        llm::ChatExchange ex,
        backend.Chat(prompts::kAssistantSystem,
                     prompts::CommandLabeling(listing, command.text)));
    CanonicalDevices canonical =
        CanonicalizeDeviceSet(SplitDeviceList(ex.reply), catalog);
    if (canonical.ids.empty()) {
      result.quarantine.push_back(
          {command, ex.reply, std::move(canonical.unmatched)});
    } else {
      result.examples.push_back({command, std::move(canonical.ids), source});
    }
  }
  return result;
}

}  // namespace hearth::forge
