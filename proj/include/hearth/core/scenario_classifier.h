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

#ifndef HEARTH_CORE_SCENARIO_CLASSIFIER_H_
#define HEARTH_CORE_SCENARIO_CLASSIFIER_H_

#include <array>
#include <optional>
#include <string_view>

#include "hearth/core/types.h"

namespace hearth {

// Per-scenario keyword hit counts for `text`, indexed like kAllScenarios.
std::array<int, 9> ScenarioKeywordHits(std::string_view text);

// The scenario with the most keyword hits; ties go to the earlier scenario
// in kAllScenarios. nullopt when no keyword matches.
std::optional<Scenario> ClassifyScenario(std::string_view text);

}  // namespace hearth

#endif  // HEARTH_CORE_SCENARIO_CLASSIFIER_H_
