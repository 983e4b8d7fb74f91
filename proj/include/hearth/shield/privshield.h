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

#ifndef HEARTH_SHIELD_PRIVSHIELD_H_
#define HEARTH_SHIELD_PRIVSHIELD_H_

#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/types.h"
#include "hearth/llm/backend.h"
#include "hearth/shield/pii_filter.h"

namespace hearth::shield {

inline constexpr size_t kDefaultDecoyCount = 4;
inline constexpr int kDefaultDecoyRetryBudget = 3;

struct RewriteResult {
  std::string text;
  std::vector<PiiHit> redactions;
  // True when the backend paraphrase was empty and the locally redacted
  // original was used instead.
  bool fell_back = false;
};

// Paraphrases `command` on the local model, then runs the local redaction
// pass over the paraphrase.
absl::StatusOr<RewriteResult> RewriteCommand(llm::LlmBackend& local,
                                             std::string_view command,
                                             const PiiFilter& filter);

struct DecoySet {
  std::vector<std::string> decoys;
  std::vector<std::string> warnings;
};

// Exactly `n` decoys. Candidates the keyword classifier puts in the same
// scenario as `rewritten` are regenerated up to `retry_budget` extra
// rounds, then accepted with a warning. Fewer than `n` usable lines after
// the budget is an error.
absl::StatusOr<DecoySet> GenerateDecoys(llm::LlmBackend& local,
                                        std::string_view rewritten, size_t n,
                                        const PiiFilter& filter,
                                        int retry_budget =
                                            kDefaultDecoyRetryBudget);

struct ObfuscationBatch {
  std::string batch_id;
  std::string rewritten;
  std::vector<std::string> decoys;
  // (command id, text) in id order; ids are exactly 1..n+1.
  std::vector<std::pair<int, std::string>> assignments;
  // Id of the rewritten command. Local only; never serialized outbound.
  int secret_index = 0;
  size_t n = 0;
};

struct AssembledQuery {
  ObfuscationBatch batch;
  std::string outbound;
};

// Shuffles the rewritten command among the decoys with a seeded uniform
// permutation and renders the combined cloud query.
AssembledQuery AssembleQuery(std::string rewritten,
                             std::vector<std::string> decoys,
                             uint64_t rng_seed);

struct RecoveredAdvice {
  std::string batch_id;
  std::string advice_text;
  std::string cloud_raw;
};

// Splits `reply` into "Plan for command <id>:" sections. Ids repeat →
// RecoveryFailure.
absl::StatusOr<std::vector<std::pair<int, std::string>>> ParsePlanSections(
    std::string_view reply);

// The section addressed to the batch's secret index. A missing, empty or
// duplicated section is a RecoveryFailure.
absl::StatusOr<RecoveredAdvice> RecoverPlan(const ObfuscationBatch& batch,
                                            std::string_view cloud_reply);

// Material that must never leave the device.
struct LeakContext {
  std::string home_id;
  std::vector<std::string> state_fragments;
  std::vector<std::string> profile_texts;
};

LeakContext MakeLeakContext(const HomeConfig& home,
                            const std::vector<std::string>& profile_texts);

struct LeakHit {
  std::string kind;  // "home_id", "device_state", "profile", or a PII kind
  std::string text;
};

std::vector<LeakHit> ScanOutbound(std::string_view outbound,
                                  const LeakContext& context,
                                  const PiiFilter& filter);

// Append-only JSONL audit of every consultation. Records carry the batch
// id, n, a hash of the outbound text and the outcome, never the mapping.
class AuditLog {
 public:
  struct Record {
    std::string batch_id;
    size_t n = 0;
    std::string outbound_sha256;
    std::string status;  // "recovered", "recovery_failure", "blocked", ...
  };

  // Empty path keeps records in memory only.
  explicit AuditLog(std::string path = {}) : path_(std::move(path)) {}

  absl::Status Append(Record record);
  std::vector<Record> records() const;

 private:
  const std::string path_;
  mutable std::mutex mu_;
  std::vector<Record> records_;
};

struct ShieldConfig {
  size_t n = kDefaultDecoyCount;
  int decoy_retry_budget = kDefaultDecoyRetryBudget;
  PiiFilter filter;
};

struct ConsultRequest {
  std::string command;
  LeakContext leak_context;
  uint64_t seed = 0;
};

struct ConsultOutcome {
  ObfuscationBatch batch;
  std::string outbound;
  RecoveredAdvice advice;
  std::vector<std::string> warnings;
};

// rewrite → decoys → assemble → one cloud call → recover.
class PrivShield {
 public:
  PrivShield(llm::BackendPtr local, llm::BackendPtr cloud, ShieldConfig config,
             AuditLog* audit = nullptr);

  const ShieldConfig& config() const { return config_; }

  // Prepares the batch without contacting the cloud. An outbound query that
  // fails the leak scan is refused here.
  absl::StatusOr<AssembledQuery> Prepare(const ConsultRequest& request,
                                         std::vector<std::string>* warnings);

  // Sends a prepared batch: exactly one cloud call, then recovery.
  absl::StatusOr<ConsultOutcome> Send(AssembledQuery query);

  absl::StatusOr<ConsultOutcome> Consult(const ConsultRequest& request);

 private:
  llm::BackendPtr local_;
  llm::BackendPtr cloud_;
  ShieldConfig config_;
  AuditLog* audit_;
};

}  // namespace hearth::shield

#endif  // HEARTH_SHIELD_PRIVSHIELD_H_
