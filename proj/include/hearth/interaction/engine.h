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

#ifndef HEARTH_INTERACTION_ENGINE_H_
#define HEARTH_INTERACTION_ENGINE_H_

#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/clock.h"
#include "hearth/interaction/session.h"
#include "hearth/llm/backend.h"
#include "hearth/profiles/profile_store.h"
#include "hearth/shield/privshield.h"

namespace hearth::interaction {

inline constexpr int kAdviceSuggestRejectAfter = 5;
inline constexpr std::string_view kVariationNote =
    "The user rejected the previous plan and declined cloud help. Propose a "
    "different alternative using the same devices.";

// Receives accepted plans. Plan execution is out of scope; implementations
// record what would be adjusted.
class Dispatcher {
 public:
  virtual ~Dispatcher() = default;
  virtual void Dispatch(const Session& session, const ActionPlan& plan) = 0;
};

// Keeps accepted plans in memory and, given a path, appends them as JSONL.
class LoggingDispatcher final : public Dispatcher {
 public:
  explicit LoggingDispatcher(std::string path = {}) : path_(std::move(path)) {}

  struct Entry {
    std::string session_id;
    std::string home_id;
    ActionPlan plan;
  };
  void Dispatch(const Session& session, const ActionPlan& plan) override;
  std::vector<Entry> entries() const;

 private:
  const std::string path_;
  mutable std::mutex mu_;
  std::vector<Entry> entries_;
};

struct EngineDeps {
  const DeviceCatalog* catalog = nullptr;
  llm::BackendPtr local;
  shield::PrivShield* shield = nullptr;
  Clock* clock = nullptr;
  Dispatcher* dispatcher = nullptr;
  // Resolves the profile store of a user; nullptr disables personalization.
  std::function<profiles::ProfileStore*(const std::string& user_id)> profiles;
};

enum class StepKind {
  kProposal,
  kClarification,
  kConsentRequested,
  kDispatched,
  kRecoveryFailure,
};
std::string_view StepKindName(StepKind k);

struct StepResult {
  StepKind kind = StepKind::kProposal;
  const Proposal* proposal = nullptr;  // into the session, for kProposal
  std::string message;
  std::vector<std::string> suggestions;
};

// Drives one session at a time; the caller serializes calls per session.
class Engine {
 public:
  explicit Engine(EngineDeps deps);

  Session NewSession(std::string session_id, std::string user_id,
                     std::string home_id);

  // Ordering error while a plan or consent is pending.
  absl::StatusOr<StepResult> SubmitCommand(Session& session,
                                           const HomeConfig& home,
                                           std::string_view text);
  // Ordering error unless a plan is pending.
  absl::StatusOr<StepResult> GiveVerdict(Session& session,
                                         const HomeConfig& home,
                                         VerdictKind kind,
                                         std::string_view text = {});
  // Ordering error unless consent is pending.
  absl::StatusOr<StepResult> ResolveConsent(Session& session,
                                            const HomeConfig& home,
                                            bool granted);

 private:
  void Emit(Session& s, const Turn& t, std::string type, Json data);
  absl::StatusOr<const Proposal*> Regenerate(Session& s, Turn& t,
                                             const HomeConfig& home,
                                             std::string advice,
                                             ProposalSource source,
                                             std::string batch_id);
  void PrepareConsent(Session& s, Turn& t, const HomeConfig& home);
  uint64_t BatchSeed(const Session& s, const Turn& t) const;

  EngineDeps deps_;
};

}  // namespace hearth::interaction

#endif  // HEARTH_INTERACTION_ENGINE_H_
