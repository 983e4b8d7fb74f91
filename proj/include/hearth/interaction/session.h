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

#ifndef HEARTH_INTERACTION_SESSION_H_
#define HEARTH_INTERACTION_SESSION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "hearth/core/serialize.h"
#include "hearth/core/types.h"
#include "hearth/shield/privshield.h"

namespace hearth::interaction {

enum class ProposalSource { kLocal, kCloudAdvised };
std::string_view ProposalSourceName(ProposalSource s);

struct Proposal {
  ActionPlan plan;
  ProposalSource source = ProposalSource::kLocal;
  // Advice text the plan was generated with, if any.
  std::string advice;
  // Cloud-advised proposals name the batch that produced the advice.
  std::string batch_id;
  std::vector<std::string> discrepancies;
};

enum class VerdictKind { kAccept, kAdvice, kReject };
std::string_view VerdictKindName(VerdictKind k);
std::optional<VerdictKind> ParseVerdictKind(std::string_view name);

struct UserVerdict {
  VerdictKind kind = VerdictKind::kAccept;
  std::string text;  // required for kAdvice
  int64_t at = 0;
};

struct ConsentPreview {
  std::string rewritten;
  size_t n = 0;
};

struct ConsentEvent {
  int64_t requested_at = 0;
  std::optional<bool> granted;
  int64_t resolved_at = 0;
  // What would leave the device; empty when preparation failed.
  std::optional<ConsentPreview> preview;
};

enum class TurnState {
  kPendingPlan,
  kAwaitingConsent,
  kClarification,
  kClosed,
};
std::string_view TurnStateName(TurnState s);

struct Turn {
  int index = 0;
  Command command;
  DeviceSet comprehensive;
  DeviceSet matched;
  std::vector<std::string> profiles;
  std::vector<Proposal> proposals;
  std::vector<UserVerdict> verdicts;
  std::vector<ConsentEvent> consents;
  std::optional<ActionPlan> final_plan;
  TurnState state = TurnState::kPendingPlan;
  std::string clarification;
  int consecutive_advice = 0;
  bool used_privshield = false;
  int cloud_attempts = 0;
  std::vector<std::string> notes;
  // Prepared batch awaiting consent. Holds the secret index; local only.
  std::optional<shield::AssembledQuery> prepared;
};

struct Event {
  uint64_t seq = 0;
  std::string type;
  int turn = 0;
  int64_t at = 0;
  Json data;
};

enum class SessionStatus { kActive, kClosed };

struct Session {
  std::string session_id;
  std::string user_id;
  std::string home_id;
  SessionStatus status = SessionStatus::kActive;
  std::vector<Turn> turns;
  std::vector<Event> events;

  // The turn awaiting a verdict or consent, if any.
  Turn* open_turn();
  const Turn* open_turn() const;
};

// The public transcript. `include_private` adds prepared batches with their
// secret index and is used only for local persistence.
Json SessionToJson(const Session& s, bool include_private = false);
absl::StatusOr<Session> SessionFromJson(const Json& j);
Json EventToJson(const Event& e);

// Hash of the public transcript.
std::string TranscriptHash(const Session& s);

struct UsageStats {
  size_t turns = 0;
  size_t privshield_uses = 0;
  double epsilon = 0;
};

UsageStats ComputeUsage(const std::vector<bool>& used_per_turn);
UsageStats ComputeUsage(const Session& s);

// Epsilon over every trailing window of `window` turns, oldest first.
std::vector<double> TrailingEpsilon(const std::vector<bool>& used_per_turn,
                                    size_t window);

}  // namespace hearth::interaction

#endif  // HEARTH_INTERACTION_SESSION_H_
