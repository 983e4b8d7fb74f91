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

#ifndef HEARTH_SERVICE_ASSISTANT_SERVICE_H_
#define HEARTH_SERVICE_ASSISTANT_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/clock.h"
#include "hearth/interaction/engine.h"
#include "hearth/llm/backend.h"
#include "hearth/profiles/profile_store.h"
#include "hearth/service/config.h"
#include "hearth/shield/privshield.h"

namespace hearth::service {

inline constexpr std::string_view kBuildVersion = "0.1.0";

struct BackendOverrides {
  llm::BackendPtr local;
  llm::BackendPtr cloud;
  llm::BackendPtr embedding;
};

// The application facade shared by the HTTP server, the CLI and tests.
// Every method returns a JSON payload or a status whose code maps to the
// HTTP error (NotFound → 404, FailedPrecondition → 409, ...).
//
// Layout of data_dir:
//   sessions/<id>.json      session snapshot, rewritten after every change
//   profiles/<user>.*       profile journal and snapshot
//   homes.json              homes after the first PUT
//   audit.jsonl             cloud consultation audit
//   dispatch.jsonl          accepted plans
class AssistantService {
 public:
  static absl::StatusOr<std::unique_ptr<AssistantService>> Create(
      const AppConfig& config, BackendOverrides overrides = {});
  ~AssistantService();

  absl::StatusOr<Json> CreateSession(const std::string& user_id,
                                     const std::string& home_id);
  absl::StatusOr<Json> SubmitCommand(const std::string& session_id,
                                     const std::string& text);
  absl::StatusOr<Json> GiveVerdict(const std::string& session_id,
                                   const std::string& kind,
                                   const std::string& text);
  absl::StatusOr<Json> ResolveConsent(const std::string& session_id,
                                      bool granted);
  absl::StatusOr<Json> Transcript(const std::string& session_id);
  absl::StatusOr<std::vector<interaction::Event>> EventsAfter(
      const std::string& session_id, uint64_t after_seq);
  // Hash of the public transcript.
  absl::StatusOr<std::string> TranscriptHash(const std::string& session_id);

  absl::StatusOr<Json> ListProfiles(const std::string& user_id);
  absl::StatusOr<Json> CompactProfiles(const std::string& user_id);

  Json ListHomes();
  absl::StatusOr<Json> PutHome(const std::string& home_id, const Json& body);

  Json Stats();
  Json Health();

  // Writes profile snapshots; session snapshots are always current.
  absl::Status Flush();

  const AppConfig& config() const { return config_; }
  const DeviceCatalog& catalog() const { return catalog_; }
  llm::LlmBackend& local_backend() { return *local_; }
  llm::LlmBackend& cloud_backend() { return *cloud_; }
  llm::LlmBackend& embedding_backend() { return *embedding_; }
  shield::AuditLog& audit() { return *audit_; }

 private:
  struct SessionSlot {
    std::mutex mu;
    interaction::Session session;
  };

  AssistantService(AppConfig config, DeviceCatalog catalog);

  absl::Status Init(BackendOverrides overrides);
  absl::StatusOr<SessionSlot*> FindSession(const std::string& id);
  absl::StatusOr<HomeConfig> HomeFor(const std::string& home_id);
  profiles::ProfileStore* ProfilesFor(const std::string& user_id);
  absl::StatusOr<profiles::ProfileStore*> OpenProfiles(
      const std::string& user_id);
  absl::Status PersistSession(const interaction::Session& s);
  absl::Status PersistHomes();
  Json StepJson(const interaction::Session& s,
                const interaction::StepResult& r) const;

  const AppConfig config_;
  const DeviceCatalog catalog_;
  std::unique_ptr<Clock> clock_;
  llm::BackendPtr local_;
  llm::BackendPtr cloud_;
  llm::BackendPtr embedding_;
  std::unique_ptr<shield::AuditLog> audit_;
  std::unique_ptr<shield::PrivShield> shield_;
  std::unique_ptr<interaction::LoggingDispatcher> dispatcher_;
  std::unique_ptr<interaction::Engine> engine_;

  std::mutex sessions_mu_;
  std::map<std::string, std::unique_ptr<SessionSlot>> sessions_;
  uint64_t next_session_ = 1;

  std::mutex homes_mu_;
  std::map<std::string, HomeConfig> homes_;

  std::mutex profiles_mu_;
  std::map<std::string, std::unique_ptr<profiles::ProfileStore>> profiles_;
};

}  // namespace hearth::service

#endif  // HEARTH_SERVICE_ASSISTANT_SERVICE_H_
