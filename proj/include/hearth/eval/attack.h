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

#ifndef HEARTH_EVAL_ATTACK_H_
#define HEARTH_EVAL_ATTACK_H_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/hash.h"
#include "hearth/core/serialize.h"
#include "hearth/core/types.h"
#include "hearth/llm/backend.h"

namespace hearth::eval {

enum class AdversaryKind { kRandom, kKeyword, kLlm };
std::string_view AdversaryName(AdversaryKind k);
std::optional<AdversaryKind> ParseAdversary(std::string_view name);

// An honest-but-curious observer guessing which command in each round is
// real. Texts arrive in command-id order (ids are index + 1).
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual AdversaryKind kind() const = 0;
  // Index into `texts`.
  virtual absl::StatusOr<size_t> Guess(const std::vector<std::string>& texts) = 0;
};

class RandomAdversary final : public Adversary {
 public:
  explicit RandomAdversary(uint64_t seed) : rng_(seed) {}
  AdversaryKind kind() const override { return AdversaryKind::kRandom; }
  absl::StatusOr<size_t> Guess(const std::vector<std::string>& texts) override;

 private:
  SeededRng rng_;
};

// Scores each text by how often its scenario appeared in every earlier
// round, so a user who keeps returning to one activity stands out. Ties are
// broken at random.
class KeywordAdversary final : public Adversary {
 public:
  explicit KeywordAdversary(uint64_t seed) : rng_(seed) {}
  AdversaryKind kind() const override { return AdversaryKind::kKeyword; }
  absl::StatusOr<size_t> Guess(const std::vector<std::string>& texts) override;

 private:
  SeededRng rng_;
  std::array<int64_t, 9> seen_{};
};

// Asks a model to pick the real command, given its earlier picks. A reply
// without "Real: <id>" naming a listed id is an error.
class LlmAdversary final : public Adversary {
 public:
  explicit LlmAdversary(llm::BackendPtr backend) : backend_(std::move(backend)) {}
  AdversaryKind kind() const override { return AdversaryKind::kLlm; }
  absl::StatusOr<size_t> Guess(const std::vector<std::string>& texts) override;

 private:
  llm::BackendPtr backend_;
  std::vector<std::string> history_;
};

std::optional<int> ParseRealId(std::string_view reply);

// Produces the decoys for a round.
using DecoySource = std::function<absl::StatusOr<std::vector<std::string>>(
    const Command& real, size_t n, SeededRng& rng)>;

// Draws decoys from corpus commands of other scenarios.
DecoySource CrossScenarioDecoys(std::vector<Command> corpus);
// Draws decoys from corpus commands of the real command's scenario.
DecoySource SameScenarioDecoys(std::vector<Command> corpus);

struct AttackConfig {
  size_t n = 4;
  size_t rounds = 1000;
  uint64_t seed = 1;
};

struct AttackTrial {
  size_t round = 0;
  size_t batch_size = 0;
  int guessed_id = 0;
  int secret_index = 0;
  bool correct = false;
};

struct AttackReport {
  AdversaryKind adversary = AdversaryKind::kRandom;
  size_t n = 0;
  std::vector<AttackTrial> trials;
  size_t skipped = 0;
  size_t correct = 0;
  // Success rate after each scored round.
  std::vector<double> cumulative_sr;
  double sr() const {
    return trials.empty() ? 0.0
                          : static_cast<double>(correct) /
                                static_cast<double>(trials.size());
  }
};

// Each round draws a real command from `corpus`, adds decoys, shuffles them
// into a batch exactly as the shield does and asks the adversary.
absl::StatusOr<AttackReport> SimulateAttack(Adversary& adversary,
                                            const std::vector<Command>& corpus,
                                            const DecoySource& decoys,
                                            const AttackConfig& config);

// Whole-system rate: epsilon * per-query rate. Inputs must lie in [0, 1].
absl::StatusOr<double> OverallSr(double sr_p, double epsilon);

Json AttackReportJson(const AttackReport& report);
// Header: round,batch_size,guessed_id,secret_index,correct,cumulative_sr
std::string AttackReportCsv(const AttackReport& report);

}  // namespace hearth::eval

#endif  // HEARTH_EVAL_ATTACK_H_
