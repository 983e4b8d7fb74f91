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

#ifndef HEARTH_FORGE_COMMAND_POOL_H_
#define HEARTH_FORGE_COMMAND_POOL_H_

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/types.h"

namespace hearth::forge {

struct Admission {
  bool retained = false;
  // Max ROUGE-L against the pool at decision time; 0 for an empty pool.
  double max_similarity = 0.0;
  // Id of the most similar pool member (first one on ties); empty if none.
  std::string nearest_id;
};

// The similarity-gated command pool. Admission is serialized through one
// mutex so concurrent synthesis workers cannot break the invariant that
// every pair of members scores below alpha.
class CommandPool {
 public:
  // alpha must lie in (0, 1].
  static absl::StatusOr<std::unique_ptr<CommandPool>> Create(double alpha);

  // Retains `candidate` iff its max ROUGE-L against every member is below
  // alpha. Candidates with empty text are rejected with max_similarity 1.
  Admission Admit(const Command& candidate);

  // The decision Admit would make now, without mutating the pool.
  Admission Evaluate(const Command& candidate) const;

  double alpha() const { return alpha_; }
  std::vector<Command> commands() const;
  size_t size() const;

 private:
  explicit CommandPool(double alpha) : alpha_(alpha) {}
  Admission EvaluateLocked(const std::vector<std::string>& tokens) const;

  const double alpha_;
  mutable std::mutex mu_;
  std::vector<Command> commands_;
  std::vector<std::vector<std::string>> tokens_;
};

}  // namespace hearth::forge

#endif  // HEARTH_FORGE_COMMAND_POOL_H_
