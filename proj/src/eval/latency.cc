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

#include "hearth/eval/latency.h"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace hearth::eval {

double Percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0;
  const double rank = std::ceil(q / 100.0 * static_cast<double>(sorted.size()));
  const size_t idx =
      static_cast<size_t>(std::clamp(rank, 1.0, static_cast<double>(sorted.size())));
  return sorted[idx - 1];
}

LatencyReport SummarizeLatency(std::string label, std::vector<double> samples_ms,
                               size_t failures) {
  LatencyReport r;
  r.label = std::move(label);
  r.failures = failures;
  r.samples_ms = std::move(samples_ms);
  if (r.samples_ms.empty()) return r;
  std::vector<double> sorted = r.samples_ms;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0;
  for (double v : sorted) sum += v;
  r.mean_ms = sum / static_cast<double>(sorted.size());
  double sq = 0;
  for (double v : sorted) sq += (v - r.mean_ms) * (v - r.mean_ms);
  r.variance_ms2 = sq / static_cast<double>(sorted.size());
  r.min_ms = sorted.front();
  r.max_ms = sorted.back();
  r.p50_ms = Percentile(sorted, 50);
  r.p90_ms = Percentile(sorted, 90);
  r.p99_ms = Percentile(sorted, 99);
  return r;
}

absl::StatusOr<LatencyReport> MeasureLatency(std::string label,
                                             const Pipeline& pipeline,
                                             const std::vector<Command>& corpus,
                                             size_t repetitions) {
  if (corpus.empty() || repetitions == 0) {
    return absl::InvalidArgumentError("measure_latency: nothing to measure");
  }
  std::vector<double> samples;
  size_t failures = 0;
  for (size_t rep = 0; rep < repetitions; ++rep) {
    for (const Command& c : corpus) {
      const auto start = std::chrono::steady_clock::now();
      const absl::Status s = pipeline(c);
      const auto end = std::chrono::steady_clock::now();
      if (!s.ok()) {
        ++failures;
        continue;
      }
      samples.push_back(
          std::chrono::duration<double, std::milli>(end - start).count());
    }
  }
  return SummarizeLatency(std::move(label), std::move(samples), failures);
}

Json LatencyJson(const LatencyReport& r) {
  return Json{{"label", r.label},   {"samples", r.samples_ms.size()},
              {"failures", r.failures}, {"mean_ms", r.mean_ms},
              {"variance_ms2", r.variance_ms2}, {"min_ms", r.min_ms},
              {"max_ms", r.max_ms}, {"p50_ms", r.p50_ms},
              {"p90_ms", r.p90_ms}, {"p99_ms", r.p99_ms}};
}

}  // namespace hearth::eval
