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

#include "hearth/forge/dataset_io.h"

#include <algorithm>

#include "hearth/core/prompts.h"
#include "hearth/core/strings.h"

namespace hearth::forge {

absl::StatusOr<std::vector<Command>> SeedsFromJson(const Json& j) {
  if (!j.is_array()) {
    return absl::InvalidArgumentError("seeds: expected a JSON array");
  }
  std::vector<Command> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string path = StrCat("seeds[", i, "]");
    Command c;
    c.id = fmt::format("seed-{:03d}", i + 1);
    HEARTH_ASSIGN_OR_RETURN(c.text, GetString(j[i], "text", path));
    HEARTH_ASSIGN_OR_RETURN(std::string scenario,
                            GetString(j[i], "scenario", path));
    std::optional<Scenario> s = ParseScenario(scenario);
    if (!s) {
      return absl::InvalidArgumentError(StrCat(
          path, ".scenario: unknown scenario '", scenario, "'"));
    }
    c.scenario = *s;
    c.provenance = Provenance::kSeed;
    HEARTH_RETURN_IF_ERROR(ValidateCommand(c));
    out.push_back(std::move(c));
  }
  return out;
}

absl::StatusOr<std::vector<Command>> LoadSeeds(const std::string& path) {
  HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  HEARTH_ASSIGN_OR_RETURN(Json j, ParseJson(text));
  return SeedsFromJson(j);
}

Json SynthesisRunToJson(const SynthesisRun& run) {
  Json events = Json::array();
  for (const SynthesisEvent& e : run.events) {
    events.push_back({{"iteration", e.iteration},
                      {"direction", e.direction},
                      {"outcome", e.outcome},
                      {"candidate_id", e.candidate_id},
                      {"text", e.text},
                      {"max_similarity", e.max_similarity},
                      {"nearest_id", e.nearest_id}});
  }
  return Json{{"iterations", run.iterations},
              {"sample_size", run.sample_size},
              {"generated", run.generated},
              {"accepted", run.accepted},
              {"rejected_similarity", run.rejected_similarity},
              {"rejected_relevance", run.rejected_relevance},
              {"rejected_unparseable", run.rejected_unparseable},
              {"events", events}};
}

Json PoolToJson(const PoolFile& pool) {
  Json commands = Json::array();
  for (const Command& c : pool.commands) commands.push_back(ToJson(c));
  Json out = {{"alpha", pool.alpha}, {"commands", commands}};
  if (pool.run) out["run"] = SynthesisRunToJson(*pool.run);
  return out;
}

absl::StatusOr<PoolFile> PoolFromJson(const Json& j) {
  PoolFile pool;
  HEARTH_ASSIGN_OR_RETURN(pool.alpha, GetNumber(j, "alpha", "pool"));
  auto commands = j.find("commands");
  if (commands == j.end() || !commands->is_array()) {
    return absl::InvalidArgumentError("pool.commands: expected array");
  }
  for (size_t i = 0; i < commands->size(); ++i) {
    HEARTH_ASSIGN_OR_RETURN(
        Command c,
        CommandFromJson((*commands)[i], StrCat("pool.commands[", i, "]")));
    pool.commands.push_back(std::move(c));
  }
  return pool;
}

Json LabelingToJson(const LabelingResult& result) {
  Json examples = Json::array();
  for (const LabeledExample& e : result.examples) {
    examples.push_back(
        {{"command", ToJson(e.command)},
         {"devices", ToJson(e.devices)},
         {"label_source", std::string(LabelSourceName(e.label_source))}});
  }
  Json quarantine = Json::array();
  for (const QuarantineRecord& q : result.quarantine) {
    quarantine.push_back({{"command", ToJson(q.command)},
                          {"reply", q.reply},
                          {"unmatched", q.unmatched}});
  }
  return Json{{"examples", examples}, {"quarantine", quarantine}};
}

absl::StatusOr<LabelingResult> LabelingFromJson(const Json& j) {
  LabelingResult out;
  if (!j.is_object() || !j.contains("examples") || !j["examples"].is_array()) {
    return absl::InvalidArgumentError("labels.examples: expected array");
  }
  for (size_t i = 0; i < j["examples"].size(); ++i) {
    const Json& e = j["examples"][i];
    const std::string path = StrCat("labels.examples[", i, "]");
    if (!e.is_object() || !e.contains("command") || !e.contains("devices")) {
      return absl::InvalidArgumentError(
          StrCat(path, ": needs 'command' and 'devices'"));
    }
    LabeledExample ex;
    HEARTH_ASSIGN_OR_RETURN(ex.command,
                            CommandFromJson(e["command"], path + ".command"));
    HEARTH_ASSIGN_OR_RETURN(ex.devices,
                            DeviceSetFromJson(e["devices"], path + ".devices"));
    HEARTH_ASSIGN_OR_RETURN(std::string source,
                            GetString(e, "label_source", path));
    std::optional<LabelSource> s = ParseLabelSource(source);
    if (!s) {
      return absl::InvalidArgumentError(
          StrCat(path, ".label_source: unknown '", source, "'"));
    }
    ex.label_source = *s;
    out.examples.push_back(std::move(ex));
  }
  if (j.contains("quarantine")) {
    const Json& q = j["quarantine"];
    if (!q.is_array()) {
      return absl::InvalidArgumentError("labels.quarantine: expected array");
    }
    for (size_t i = 0; i < q.size(); ++i) {
      const std::string path = StrCat("labels.quarantine[", i, "]");
      QuarantineRecord r;
      if (!q[i].is_object() || !q[i].contains("command")) {
        return absl::InvalidArgumentError(StrCat(path, ": needs 'command'"));
      }
      HEARTH_ASSIGN_OR_RETURN(r.command,
                              CommandFromJson(q[i]["command"], path + ".command"));
      HEARTH_ASSIGN_OR_RETURN(r.reply, GetString(q[i], "reply", path));
      HEARTH_ASSIGN_OR_RETURN(r.unmatched,
                              GetStringList(q[i], "unmatched", path));
      out.quarantine.push_back(std::move(r));
    }
  }
  return out;
}

std::string RenderJsonl(std::span<const LabeledExample> examples,
                        const DeviceCatalog& catalog) {
  std::vector<const LabeledExample*> sorted;
  for (const LabeledExample& e : examples) sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const LabeledExample* a, const LabeledExample* b) {
                     return a->command.id < b->command.id;
                   });
  const std::string instruction =
      prompts::DeviceIdentificationInstruction(CatalogListing(catalog));
  std::string out;
  for (const LabeledExample* e : sorted) {
    const Json record = {{"instruction", instruction},
                         {"input", e->command.text},
                         {"output", StrJoin(e->devices, ", ")}};
    StrAppend(&out, CanonicalDump(record), "\n");
  }
  return out;
}

absl::Status ExportDataset(std::span<const LabeledExample> examples,
                           const DeviceCatalog& catalog,
                           const std::string& path) {
  return WriteFile(path, RenderJsonl(examples, catalog));
}

}  // namespace hearth::forge
