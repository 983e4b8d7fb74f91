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

#ifndef HEARTH_EVAL_BENCHMARK_H_
#define HEARTH_EVAL_BENCHMARK_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/serialize.h"
#include "hearth/core/types.h"
#include "hearth/eval/drs.h"

namespace hearth::eval {

struct BenchmarkCase {
  Command command;
  DeviceSet ground_truth;
};

// Corpus file: a JSON array of {"id", "command", "scenario", "devices"}.
// Ground truth must be non-empty and inside the catalog.
absl::StatusOr<std::vector<BenchmarkCase>> CorpusFromJson(
    const Json& j, const DeviceCatalog& catalog);
absl::StatusOr<std::vector<BenchmarkCase>> LoadCorpus(
    const std::string& path, const DeviceCatalog& catalog);

using Predictor = std::function<absl::StatusOr<DeviceSet>(const Command&)>;

enum class CaseStatus { kScored, kEmptyPrediction, kFailed };
std::string_view CaseStatusName(CaseStatus s);

struct CaseResult {
  std::string case_id;
  Scenario scenario = Scenario::kLighting;
  DeviceSet truth;
  DeviceSet predicted;
  CaseStatus status = CaseStatus::kScored;
  std::optional<Rational> score;
  std::string error;
};

struct Summary {
  size_t scored = 0;
  size_t empty_predictions = 0;
  size_t failed = 0;
  double mean = 0;
  // Population variance of the scored cases.
  double variance = 0;
};

struct BenchmarkReport {
  std::vector<CaseResult> cases;  // sorted by case id
  std::map<Scenario, Summary> per_scenario;
  Summary overall;
};

Summary Summarize(const std::vector<const CaseResult*>& cases);

// A failing predictor marks its case failed; the run continues.
BenchmarkReport RunBenchmark(const std::vector<BenchmarkCase>& corpus,
                             const Predictor& predict);

// Header: case_id,scenario,status,score,score_value,truth,predicted
std::string ReportCsv(const BenchmarkReport& report);
Json ReportJson(const BenchmarkReport& report);

}  // namespace hearth::eval

#endif  // HEARTH_EVAL_BENCHMARK_H_
