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

#ifndef HEARTH_PROFILES_PROFILE_STORE_H_
#define HEARTH_PROFILES_PROFILE_STORE_H_

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/clock.h"
#include "hearth/llm/backend.h"
#include "hearth/profiles/profile.h"

namespace hearth::profiles {

inline constexpr double kDefaultBeta = 0.6;
inline constexpr int kJournalVersion = 1;

struct ProfileStoreOptions {
  std::string user_id = "default";
  double beta = kDefaultBeta;
  // Directory for the journal and snapshot. Empty keeps the store in memory.
  std::string directory;
};

enum class UpsertKind { kInserted, kMerged, kDeferred };

struct UpsertResult {
  UpsertKind kind = UpsertKind::kInserted;
  std::string id;  // the new entry, or the entry merged into
  // Highest cosine against the entries present before the upsert; empty
  // store reports nullopt.
  std::optional<double> max_similarity;
};

struct Retrieved {
  std::string id;
  std::string text;
  double similarity = 0;
};

struct CompactionReport {
  int merges = 0;
  size_t size_before = 0;
  size_t size_after = 0;
};

// Per-user profile collection. Inserts a new profile when its best cosine
// against every stored entry is below beta; otherwise merges it into the
// most similar entry (smaller id on ties), which keeps its id.
//
// On disk: `<dir>/<user>.journal.jsonl` holds one event per line
// ({"v","seq","op","profile"}), `<dir>/<user>.snapshot.json` holds
// {"v","seq","next_id","entries"}. Opening loads the snapshot and replays
// journal events with a larger seq.
class ProfileStore {
 public:
  // `embedder` computes profile and query embeddings; `local` runs the merge
  // prompt. `clock` must outlive the store.
  static absl::StatusOr<std::unique_ptr<ProfileStore>> Open(
      ProfileStoreOptions options, llm::BackendPtr embedder,
      llm::BackendPtr local, Clock* clock);

  const ProfileStoreOptions& options() const { return options_; }

  // Embedding failure queues the profile and reports kDeferred.
  absl::StatusOr<UpsertResult> Upsert(ProfileFields fields,
                                      bool fallback = false);
  // Retries queued upserts in arrival order.
  std::vector<absl::StatusOr<UpsertResult>> RetryDeferred();
  size_t deferred_count() const;

  absl::StatusOr<std::vector<Retrieved>> RetrieveTop(std::string_view query,
                                                     size_t k = 3) const;

  // Merges stored pairs whose cosine reached beta after earlier merges,
  // until no such pair remains.
  absl::StatusOr<CompactionReport> Compact();

  std::vector<UserProfile> entries() const;
  size_t size() const;
  uint64_t last_seq() const;

  // Rewrites the snapshot and truncates the journal.
  absl::Status WriteSnapshot();

  // Canonical text of the entries, for byte-level comparisons.
  std::string CanonicalEntries() const;

 private:
  ProfileStore(ProfileStoreOptions options, llm::BackendPtr embedder,
               llm::BackendPtr local, Clock* clock);

  absl::Status Load();
  absl::Status ApplyEvent(const Json& event, std::string_view path);
  absl::Status Journal(std::string_view op, const UserProfile& p);
  absl::StatusOr<UpsertResult> UpsertLocked(const ProfileFields& fields,
                                            bool fallback);
  std::string JournalPath() const;
  std::string SnapshotPath() const;

  const ProfileStoreOptions options_;
  llm::BackendPtr embedder_;
  llm::BackendPtr local_;
  Clock* clock_;

  mutable std::shared_mutex mu_;
  std::vector<UserProfile> entries_;
  uint64_t seq_ = 0;
  uint64_t next_id_ = 1;
  std::deque<std::pair<ProfileFields, bool>> deferred_;
};

}  // namespace hearth::profiles

#endif  // HEARTH_PROFILES_PROFILE_STORE_H_
