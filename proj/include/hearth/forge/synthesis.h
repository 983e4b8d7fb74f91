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

#ifndef HEARTH_FORGE_SYNTHESIS_H_
#define HEARTH_FORGE_SYNTHESIS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/types.h"
#include "hearth/forge/command_pool.h"
#include "hearth/llm/backend.h"

namespace hearth::forge {

enum class CandidateStatus { kCandidate, kIrrelevant, kUnparseable };

struct CandidateOutcome {
  CandidateStatus status = CandidateStatus::kUnparseable;
  Command command;  // valid only for kCandidate
  std::string raw_reply;
};

// New scenario from a sample of pool commands. A second chat call checks
// smart-home relevance; any reply not starting with "yes" discards it.
absl::StatusOr<CandidateOutcome> SynthesizeVertical(
    llm::LlmBackend& backend, std::span<const Command> sample,
    std::string candidate_id);

// Restyles sample[0] keeping its meaning and scenario; same relevance check.
absl::StatusOr<CandidateOutcome> SynthesizeHorizontal(
    llm::LlmBackend& backend, std::span<const Command> sample,
    std::string candidate_id);

enum class SynthesisMode { kAlternate, kVertical, kHorizontal };

struct SynthesisOptions {
  int iterations = 10;
  size_t sample_size = 5;
  uint64_t seed = 1;
  SynthesisMode mode = SynthesisMode::kAlternate;
};

struct SynthesisEvent {
  int iteration = 0;
  std::string direction;  // "vertical" | "horizontal"
  std::string outcome;    // "accepted" | "similar" | "irrelevant" | "unparseable"
  std::string candidate_id;
  std::string text;
  double max_similarity = 0.0;
  std::string nearest_id;
};

struct SynthesisRun {
  int iterations = 0;
  size_t sample_size = 5;
  int generated = 0;
  int accepted = 0;
  int rejected_similarity = 0;
  int rejected_relevance = 0;
  int rejected_unparseable = 0;
  std::vector<SynthesisEvent> events;
};

// Draws `k` distinct indices uniformly from [0, n).
std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k, uint64_t seed);

// Runs the augmentation loop against `pool`. Each iteration samples
// min(sample_size, pool size) commands, synthesizes one candidate in the
// iteration's direction and routes it through the similarity gate.
// Backend failures abort the run.
absl::StatusOr<SynthesisRun> RunSynthesis(llm::LlmBackend& backend,
                                          CommandPool& pool,
                                          const SynthesisOptions& options);

}  // namespace hearth::forge

#endif  // HEARTH_FORGE_SYNTHESIS_H_
