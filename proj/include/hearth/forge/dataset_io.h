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

#ifndef HEARTH_FORGE_DATASET_IO_H_
#define HEARTH_FORGE_DATASET_IO_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/serialize.h"
#include "hearth/forge/labeling.h"
#include "hearth/forge/synthesis.h"

namespace hearth::forge {

// Seeds file: JSON list of {"text", "scenario"}. Ids are assigned
// "seed-001", "seed-002", ... in file order.
absl::StatusOr<std::vector<Command>> SeedsFromJson(const Json& j);
absl::StatusOr<std::vector<Command>> LoadSeeds(const std::string& path);

struct PoolFile {
  double alpha = 0.7;
  std::vector<Command> commands;
  std::optional<SynthesisRun> run;
};

Json PoolToJson(const PoolFile& pool);
absl::StatusOr<PoolFile> PoolFromJson(const Json& j);

Json LabelingToJson(const LabelingResult& result);
absl::StatusOr<LabelingResult> LabelingFromJson(const Json& j);

Json SynthesisRunToJson(const SynthesisRun& run);

// JSONL, one {"input", "instruction", "output"} record per example, sorted
// by command id. Zero examples yield an empty string.
std::string RenderJsonl(std::span<const LabeledExample> examples,
                        const DeviceCatalog& catalog);
absl::Status ExportDataset(std::span<const LabeledExample> examples,
                           const DeviceCatalog& catalog,
                           const std::string& path);

}  // namespace hearth::forge

#endif  // HEARTH_FORGE_DATASET_IO_H_
