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

#ifndef HEARTH_EVAL_LATENCY_H_
#define HEARTH_EVAL_LATENCY_H_

#include <functional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/serialize.h"
#include "hearth/core/types.h"

namespace hearth::eval {

struct LatencyReport {
  std::string label;
  std::vector<double> samples_ms;
  size_t failures = 0;
  double mean_ms = 0;
  double variance_ms2 = 0;
  double min_ms = 0;
  double max_ms = 0;
  double p50_ms = 0;
  double p90_ms = 0;
  double p99_ms = 0;
};

// Nearest-rank percentile of `sorted` (ascending), q in (0, 100].
double Percentile(const std::vector<double>& sorted, double q);

LatencyReport SummarizeLatency(std::string label, std::vector<double> samples_ms,
                               size_t failures = 0);

// Wall-clock time from command input to final plan, per corpus command,
// repeated `repetitions` times.
using Pipeline = std::function<absl::Status(const Command&)>;
absl::StatusOr<LatencyReport> MeasureLatency(std::string label,
                                             const Pipeline& pipeline,
                                             const std::vector<Command>& corpus,
                                             size_t repetitions = 1);

Json LatencyJson(const LatencyReport& r);

}  // namespace hearth::eval

#endif  // HEARTH_EVAL_LATENCY_H_
