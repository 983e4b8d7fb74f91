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

#include "hearth/forge/synthesis.h"

#include <numeric>

#include "hearth/core/errors.h"
#include "hearth/core/hash.h"
#include "hearth/core/prompts.h"
#include "hearth/core/scenario_classifier.h"
#include "hearth/core/text.h"
#include "hearth/core/strings.h"

namespace hearth::forge {
namespace {

struct ParsedCandidate {
  std::string text;
  std::optional<Scenario> scenario;
};

std::string StripQuotes(std::string s) {
  s = Trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
      s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return Trim(s);
}

// Reads "Scenario: x" / "Command: y" lines. A single bare line counts as
// the command.
std::optional<ParsedCandidate> ParseCandidate(std::string_view reply) {
  ParsedCandidate out;
  const std::vector<std::string> lines = NonEmptyLines(reply);
  for (const std::string& line : lines) {
    if (StartsWithIgnoreCase(line, "scenario:")) {
      out.scenario = ParseScenario(line.substr(9));
    } else if (StartsWithIgnoreCase(line, "command:")) {
      out.text = StripQuotes(line.substr(8));
    }
  }
  if (out.text.empty() && lines.size() == 1 &&
      !StartsWithIgnoreCase(lines[0], "scenario:")) {
    out.text = StripQuotes(lines[0]);
  }
  if (out.text.empty()) return std::nullopt;
  return out;
}

std::vector<std::string> Texts(std::span<const Command> sample) {
  std::vector<std::string> out;
  for (const Command& c : sample) out.push_back(c.text);
  return out;
}

absl::StatusOr<bool> CheckRelevance(llm::LlmBackend& backend,
                                    std::string_view text) {
  HEARTH_ASSIGN_OR_RETURN(
      llm::ChatExchange ex,
      backend.Chat(prompts::kAssistantSystem, prompts::RelevanceCheck(text)));
  return StartsWithIgnoreCase(ex.reply, "yes");
}

absl::StatusOr<CandidateOutcome> Finish(llm::LlmBackend& backend,
                                        std::string reply,
                                        std::optional<ParsedCandidate> parsed,
                                        Scenario scenario,
                                        Provenance provenance,
                                        std::string candidate_id) {
  CandidateOutcome out;
  out.raw_reply = std::move(reply);
  if (!parsed) {
    out.status = CandidateStatus::kUnparseable;
    return out;
  }
  HEARTH_ASSIGN_OR_RETURN(bool relevant, CheckRelevance(backend, parsed->text));
  if (!relevant) {
    out.status = CandidateStatus::kIrrelevant;
    out.command.text = parsed->text;
    return out;
  }
  out.status = CandidateStatus::kCandidate;
  out.command = {std::move(candidate_id), parsed->text, scenario, provenance};
  return out;
}

}  // namespace

absl::StatusOr<CandidateOutcome> SynthesizeVertical(
    llm::LlmBackend& backend, std::span<const Command> sample,
    std::string candidate_id) {
  std::vector<std::string> scenario_names;
  for (Scenario s : kAllScenarios) {
    scenario_names.emplace_back(ScenarioName(s));
  }
  HEARTH_ASSIGN_OR_RETURN(
      llm::ChatExchange ex,
      backend.Chat(prompts::kAssistantSystem,
                   prompts::VerticalSynthesis(Texts(sample), scenario_names)));
  std::optional<ParsedCandidate> parsed = ParseCandidate(ex.reply);
  Scenario scenario = sample.empty() ? Scenario::kLighting : sample[0].scenario;
  if (parsed) {
    if (parsed->scenario) {
      scenario = *parsed->scenario;
    } else if (auto guessed = ClassifyScenario(parsed->text)) {
      scenario = *guessed;
    }
  }
  return Finish(backend, std::move(ex.reply), std::move(parsed), scenario,
                Provenance::kVerticalSynth, std::move(candidate_id));
}

absl::StatusOr<CandidateOutcome> SynthesizeHorizontal(
    llm::LlmBackend& backend, std::span<const Command> sample,
    std::string candidate_id) {
  if (sample.empty()) {
    return absl::InvalidArgumentError("horizontal synthesis needs a sample");
  }
  HEARTH_ASSIGN_OR_RETURN(
      llm::ChatExchange ex,
      backend.Chat(prompts::kAssistantSystem,
                   prompts::HorizontalSynthesis(Texts(sample))));
  std::optional<ParsedCandidate> parsed = ParseCandidate(ex.reply);
  return Finish(backend, std::move(ex.reply), std::move(parsed),
                sample[0].scenario, Provenance::kHorizontalSynth,
                std::move(candidate_id));
}

std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k,
                                             uint64_t seed) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  SeededRng rng(seed);
  k = std::min(k, n);
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.Below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

absl::StatusOr<SynthesisRun> RunSynthesis(llm::LlmBackend& backend,
                                          CommandPool& pool,
                                          const SynthesisOptions& options) {
  if (options.iterations < 0) {
    return absl::InvalidArgumentError("iterations must be non-negative");
  }
  if (options.sample_size == 0) {
    return absl::InvalidArgumentError("sample_size must be positive");
  }
  SynthesisRun run;
  run.iterations = options.iterations;
  run.sample_size = options.sample_size;
  SeededRng seeds(options.seed);
  for (int it = 0; it < options.iterations; ++it) {
    const std::vector<Command> members = pool.commands();
    if (members.empty()) {
      return absl::FailedPreconditionError(
          "command pool is empty; load seeds first");
    }
    std::vector<Command> sample;
    for (size_t i :
         SampleWithoutReplacement(members.size(), options.sample_size,
                                  seeds.Next())) {
      sample.push_back(members[i]);
    }
    const bool vertical =
        options.mode == SynthesisMode::kVertical ||
        (options.mode == SynthesisMode::kAlternate && it % 2 == 0);
    const std::string id =
        fmt::format("{}-{:05d}", vertical ? "vs" : "hs", it + 1);
    absl::StatusOr<CandidateOutcome> outcome =
        vertical ? SynthesizeVertical(backend, sample, id)
                 : SynthesizeHorizontal(backend, sample, id);
    if (!outcome.ok()) return outcome.status();
    ++run.generated;

    SynthesisEvent event;
    event.iteration = it + 1;
    event.direction = vertical ? "vertical" : "horizontal";
    event.candidate_id = id;
    switch (outcome->status) {
      case CandidateStatus::kUnparseable:
        ++run.rejected_unparseable;
        event.outcome = "unparseable";
        event.text = Trim(outcome->raw_reply);
        break;
      case CandidateStatus::kIrrelevant:
        ++run.rejected_relevance;
        event.outcome = "irrelevant";
        event.text = outcome->command.text;
        break;
      case CandidateStatus::kCandidate: {
        event.text = outcome->command.text;
        const Admission a = pool.Admit(outcome->command);
        event.max_similarity = a.max_similarity;
        event.nearest_id = a.nearest_id;
        if (a.retained) {
          ++run.accepted;
          event.outcome = "accepted";
        } else {
          ++run.rejected_similarity;
          event.outcome = "similar";
        }
        break;
      }
    }
    run.events.push_back(std::move(event));
  }
  return run;
}

}  // namespace hearth::forge
