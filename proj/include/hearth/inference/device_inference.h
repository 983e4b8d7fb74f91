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

#ifndef HEARTH_INFERENCE_DEVICE_INFERENCE_H_
#define HEARTH_INFERENCE_DEVICE_INFERENCE_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/types.h"
#include "hearth/llm/backend.h"

namespace hearth::inference {

// Step one: the relevant subset of the comprehensive catalog, asked in the
// fixed catalog-listing format. Zero recognized devices is a
// NeedsClarification error.
absl::StatusOr<DeviceSet> IdentifyComprehensive(llm::LlmBackend& backend,
                                                const Command& command,
                                                const DeviceCatalog& catalog);

// Step two: D_f = D_l ∩ D_i, computed natively.
DeviceSet MatchHome(const DeviceSet& comprehensive, const HomeConfig& home);

struct ModelMatch {
  DeviceSet matched;  // always the native intersection
  DeviceSet model_answer;
  std::vector<std::string> discrepancies;
};

// Asks the model to perform the match, then corrects its answer to the
// native intersection and reports every difference.
absl::StatusOr<ModelMatch> MatchHomeWithModel(llm::LlmBackend& backend,
                                              const DeviceSet& comprehensive,
                                              const HomeConfig& home,
                                              const DeviceCatalog& catalog);

struct PlanRequest {
  Command command;
  DeviceSet matched;
  HomeConfig home;
  std::string advice;
  // Retrieved profile texts, prepended to the prompt in rank order.
  std::vector<std::string> profiles;
};

struct PlanOutcome {
  ActionPlan plan;  // plan.devices() ⊆ request.matched
  // Steps dropped because they named devices outside the matched set or
  // could not be parsed.
  std::vector<std::string> discrepancies;
  std::string prompt;
};

// Renders available devices and their current attribute snapshot.
std::string RenderHomeState(const HomeConfig& home);

// Parses "device | attribute | value" lines plus an optional
// "Rationale: ..." line. Device names resolve through the catalog and the
// home's custom devices; unresolved lines land in `discrepancies`.
PlanOutcome ParsePlanReply(std::string_view reply, const DeviceSet& allowed,
                           const DeviceCatalog& catalog,
                           const HomeConfig& home);

absl::StatusOr<PlanOutcome> GeneratePlan(llm::LlmBackend& backend,
                                         const PlanRequest& request,
                                         const DeviceCatalog& catalog);

struct InferenceTrace {
  Command command;
  DeviceSet comprehensive;
  DeviceSet matched;
  ActionPlan plan;
  std::string backend_name;
  std::vector<std::string> discrepancies;
};

// identify → match → plan. An empty intersection raises NeedsClarification.
absl::StatusOr<InferenceTrace> RunInference(
    llm::LlmBackend& backend, const Command& command, const HomeConfig& home,
    const DeviceCatalog& catalog, std::string advice = {},
    std::vector<std::string> profiles = {});

}  // namespace hearth::inference

#endif  // HEARTH_INFERENCE_DEVICE_INFERENCE_H_
