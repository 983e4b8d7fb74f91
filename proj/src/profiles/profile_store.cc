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

#include "hearth/profiles/profile_store.h"

#include <algorithm>
#include <filesystem>

#include "fmt/format.h"
#include "hearth/core/errors.h"
#include "hearth/core/serialize.h"
#include "hearth/core/strings.h"
#include "hearth/core/text.h"

namespace hearth::profiles {
namespace {

std::string ProfileId(uint64_t n) { return fmt::format("p-{:06d}", n); }

uint64_t IdNumber(std::string_view id) {
  if (id.size() <= 2 || id.substr(0, 2) != "p-") return 0;
  uint64_t n = 0;
  for (char c : id.substr(2)) {
    if (c < '0' || c > '9') return 0;
    n = n * 10 + static_cast<uint64_t>(c - '0');
  }
  return n;
}

std::vector<UserProfile>::iterator FindId(std::vector<UserProfile>& entries,
                                          std::string_view id) {
  return std::find_if(entries.begin(), entries.end(),
                      [&](const UserProfile& p) { return p.id == id; });
}

}  // namespace

ProfileStore::ProfileStore(ProfileStoreOptions options,
                           llm::BackendPtr embedder, llm::BackendPtr local,
                           Clock* clock)
    : options_(std::move(options)),
      embedder_(std::move(embedder)),
      local_(std::move(local)),
      clock_(clock) {}

absl::StatusOr<std::unique_ptr<ProfileStore>> ProfileStore::Open(
    ProfileStoreOptions options, llm::BackendPtr embedder,
    llm::BackendPtr local, Clock* clock) {
  if (!(options.beta > 0 && options.beta < 1)) {
    return absl::InvalidArgumentError(
        StrCat("beta must be in (0, 1), got ", options.beta));
  }
  if (!IsValidSlug(options.user_id)) {
    return absl::InvalidArgumentError(
        StrCat("user_id '", options.user_id, "' is not a valid slug"));
  }
  if (embedder == nullptr || local == nullptr || clock == nullptr) {
    return absl::InvalidArgumentError(
        "profile store needs an embedder, a local model and a clock");
  }
  std::unique_ptr<ProfileStore> store(new ProfileStore(
      std::move(options), std::move(embedder), std::move(local), clock));
  HEARTH_RETURN_IF_ERROR(store->Load());
  return store;
}

std::string ProfileStore::JournalPath() const {
  return (std::filesystem::path(options_.directory) /
          (options_.user_id + ".journal.jsonl"))
      .string();
}

std::string ProfileStore::SnapshotPath() const {
  return (std::filesystem::path(options_.directory) /
          (options_.user_id + ".snapshot.json"))
      .string();
}

absl::Status ProfileStore::Load() {
  if (options_.directory.empty()) return absl::OkStatus();
  std::error_code ec;
  std::filesystem::create_directories(options_.directory, ec);
  if (ec) {
    return absl::InternalError(
        StrCat("create ", options_.directory, ": ", ec.message()));
  }
  if (std::filesystem::exists(SnapshotPath())) {
    HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(SnapshotPath()));
    HEARTH_ASSIGN_OR_RETURN(Json snap, ParseJson(text, SnapshotPath()));
    HEARTH_ASSIGN_OR_RETURN(int64_t v, GetInt(snap, "v", "snapshot"));
    if (v != kJournalVersion) {
      return absl::FailedPreconditionError(
          StrCat(SnapshotPath(), ": unsupported version ", v));
    }
    HEARTH_ASSIGN_OR_RETURN(int64_t seq, GetInt(snap, "seq", "snapshot"));
    HEARTH_ASSIGN_OR_RETURN(int64_t next, GetInt(snap, "next_id", "snapshot"));
    seq_ = static_cast<uint64_t>(seq);
    next_id_ = static_cast<uint64_t>(next);
    const Json& list = snap.value("entries", Json::array());
    for (size_t i = 0; i < list.size(); ++i) {
      HEARTH_ASSIGN_OR_RETURN(
          UserProfile p,
          ProfileFromJson(list[i], StrCat("snapshot.entries[", i, "]")));
      entries_.push_back(std::move(p));
    }
  }
  if (std::filesystem::exists(JournalPath())) {
    HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(JournalPath()));
    size_t line_no = 0;
    for (std::string_view line : SplitAny(text, "\n", true)) {
      ++line_no;
      const std::string where = StrCat(JournalPath(), ":", line_no);
      HEARTH_ASSIGN_OR_RETURN(Json event, ParseJson(line, where));
      HEARTH_RETURN_IF_ERROR(ApplyEvent(event, where));
    }
  }
  return absl::OkStatus();
}

absl::Status ProfileStore::ApplyEvent(const Json& event,
                                      std::string_view path) {
  HEARTH_ASSIGN_OR_RETURN(int64_t seq, GetInt(event, "seq", path));
  if (static_cast<uint64_t>(seq) <= seq_) return absl::OkStatus();
  if (static_cast<uint64_t>(seq) != seq_ + 1) {
    return absl::DataLossError(
        StrCat(path, ": journal gap, expected seq ", seq_ + 1, " got ", seq));
  }
  HEARTH_ASSIGN_OR_RETURN(std::string op, GetString(event, "op", path));
  auto it = event.find("profile");
  if (it == event.end()) {
    return absl::InvalidArgumentError(StrCat(path, ".profile: missing field"));
  }
  HEARTH_ASSIGN_OR_RETURN(UserProfile p,
                          ProfileFromJson(*it, StrCat(path, ".profile")));
  auto existing = FindId(entries_, p.id);
  if (op == "insert") {
    if (existing != entries_.end()) {
      return absl::DataLossError(StrCat(path, ": duplicate insert ", p.id));
    }
    next_id_ = std::max(next_id_, IdNumber(p.id) + 1);
    entries_.push_back(std::move(p));
  } else if (op == "merge") {
    if (existing == entries_.end()) {
      return absl::DataLossError(StrCat(path, ": merge into unknown ", p.id));
    }
    *existing = std::move(p);
  } else if (op == "remove") {
    if (existing == entries_.end()) {
      return absl::DataLossError(StrCat(path, ": remove of unknown ", p.id));
    }
    entries_.erase(existing);
  } else {
    return absl::InvalidArgumentError(StrCat(path, ".op: unknown '", op, "'"));
  }
  seq_ = static_cast<uint64_t>(seq);
  return absl::OkStatus();
}

absl::Status ProfileStore::Journal(std::string_view op, const UserProfile& p) {
  const uint64_t seq = seq_ + 1;
  if (!options_.directory.empty()) {
    const Json event = {{"v", kJournalVersion},
                        {"seq", seq},
                        {"op", op},
                        {"profile", ToJson(p)}};
    HEARTH_RETURN_IF_ERROR(AppendLine(JournalPath(), event.dump()));
  }
  seq_ = seq;
  return absl::OkStatus();
}

absl::StatusOr<UpsertResult> ProfileStore::Upsert(ProfileFields fields,
                                                  bool fallback) {
  HEARTH_RETURN_IF_ERROR(ValidateFields(fields));
  std::unique_lock lock(mu_);
  absl::StatusOr<UpsertResult> r = UpsertLocked(fields, fallback);
  if (r.ok() && r->kind == UpsertKind::kDeferred) {
    deferred_.emplace_back(std::move(fields), fallback);
  }
  return r;
}

absl::StatusOr<UpsertResult> ProfileStore::UpsertLocked(
    const ProfileFields& fields, bool fallback) {
  absl::StatusOr<llm::EmbeddingVector> emb =
      embedder_->Embed(RenderProfile(fields));
  if (!emb.ok()) return UpsertResult{UpsertKind::kDeferred, "", std::nullopt};

  UpsertResult result;
  const UserProfile* best = nullptr;
  for (const UserProfile& p : entries_) {
    HEARTH_ASSIGN_OR_RETURN(double c, Cosine(*emb, p.embedding));
    // Ties keep the earlier (smaller) id.
    if (!result.max_similarity || c > *result.max_similarity ||
        (c == *result.max_similarity && p.id < best->id)) {
      result.max_similarity = c;
      best = &p;
    }
  }

  if (best == nullptr || *result.max_similarity < options_.beta) {
    UserProfile p;
    p.id = ProfileId(next_id_);
    p.fields = fields;
    p.embedding = *std::move(emb);
    p.updated_at = clock_->NowMillis();
    p.fallback = fallback;
    HEARTH_RETURN_IF_ERROR(Journal("insert", p));
    ++next_id_;
    result.kind = UpsertKind::kInserted;
    result.id = p.id;
    entries_.push_back(std::move(p));
    return result;
  }

  UserProfile merged = *best;
  merged.fields = MergeFields(*local_, best->fields, fields);
  absl::StatusOr<llm::EmbeddingVector> merged_emb =
      embedder_->Embed(RenderProfile(merged.fields));
  if (!merged_emb.ok()) {
    return UpsertResult{UpsertKind::kDeferred, "", result.max_similarity};
  }
  merged.embedding = *std::move(merged_emb);
  merged.merge_count += 1;
  merged.updated_at = clock_->NowMillis();
  merged.fallback = best->fallback && fallback;
  HEARTH_RETURN_IF_ERROR(Journal("merge", merged));
  result.kind = UpsertKind::kMerged;
  result.id = merged.id;
  *FindId(entries_, merged.id) = std::move(merged);
  return result;
}

std::vector<absl::StatusOr<UpsertResult>> ProfileStore::RetryDeferred() {
  std::unique_lock lock(mu_);
  std::vector<absl::StatusOr<UpsertResult>> out;
  std::deque<std::pair<ProfileFields, bool>> still;
  while (!deferred_.empty()) {
    auto [fields, fallback] = std::move(deferred_.front());
    deferred_.pop_front();
    absl::StatusOr<UpsertResult> r = UpsertLocked(fields, fallback);
    if (r.ok() && r->kind == UpsertKind::kDeferred) {
      still.emplace_back(std::move(fields), fallback);
    }
    out.push_back(std::move(r));
  }
  deferred_ = std::move(still);
  return out;
}

size_t ProfileStore::deferred_count() const {
  std::shared_lock lock(mu_);
  return deferred_.size();
}

absl::StatusOr<std::vector<Retrieved>> ProfileStore::RetrieveTop(
    std::string_view query, size_t k) const {
  std::shared_lock lock(mu_);
  if (entries_.empty() || k == 0) return std::vector<Retrieved>{};
  HEARTH_ASSIGN_OR_RETURN(llm::EmbeddingVector q, embedder_->Embed(query));
  std::vector<Retrieved> scored;
  for (const UserProfile& p : entries_) {
    absl::StatusOr<double> c = Cosine(q, p.embedding);
    if (!c.ok()) {
      if (KindOf(c.status()) == ErrorKind::kUndefinedSimilarity) continue;
      return c.status();
    }
    scored.push_back({p.id, RenderProfile(p.fields), *c});
  }
  std::sort(scored.begin(), scored.end(),
            [](const Retrieved& a, const Retrieved& b) {
              if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
              }
              return a.id < b.id;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

absl::StatusOr<CompactionReport> ProfileStore::Compact() {
  std::unique_lock lock(mu_);
  CompactionReport report;
  report.size_before = entries_.size();
  for (;;) {
    std::optional<double> best;
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < entries_.size(); ++i) {
      for (size_t j = i + 1; j < entries_.size(); ++j) {
        HEARTH_ASSIGN_OR_RETURN(
            double c, Cosine(entries_[i].embedding, entries_[j].embedding));
        if (c >= options_.beta && (!best || c > *best)) {
          best = c;
          bi = i;
          bj = j;
        }
      }
    }
    if (!best) break;
    // The survivor is the entry with the smaller id.
    if (entries_[bj].id < entries_[bi].id) std::swap(bi, bj);
    UserProfile keep = entries_[bi];
    const UserProfile drop = entries_[bj];
    keep.fields = MergeFields(*local_, keep.fields, drop.fields);
    HEARTH_ASSIGN_OR_RETURN(keep.embedding,
                            embedder_->Embed(RenderProfile(keep.fields)));
    keep.merge_count += drop.merge_count;
    keep.updated_at = clock_->NowMillis();
    keep.fallback = keep.fallback && drop.fallback;
    HEARTH_RETURN_IF_ERROR(Journal("merge", keep));
    HEARTH_RETURN_IF_ERROR(Journal("remove", drop));
    entries_[bi] = std::move(keep);
    entries_.erase(FindId(entries_, drop.id));
    ++report.merges;
  }
  report.size_after = entries_.size();
  return report;
}

std::vector<UserProfile> ProfileStore::entries() const {
  std::shared_lock lock(mu_);
  return entries_;
}

size_t ProfileStore::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

uint64_t ProfileStore::last_seq() const {
  std::shared_lock lock(mu_);
  return seq_;
}

absl::Status ProfileStore::WriteSnapshot() {
  std::unique_lock lock(mu_);
  if (options_.directory.empty()) return absl::OkStatus();
  Json list = Json::array();
  for (const UserProfile& p : entries_) list.push_back(ToJson(p));
  const Json snap = {{"v", kJournalVersion},
                     {"seq", seq_},
                     {"next_id", next_id_},
                     {"user_id", options_.user_id},
                     {"entries", list}};
  HEARTH_RETURN_IF_ERROR(WriteFile(SnapshotPath(), snap.dump(1) + "\n"));
  return WriteFile(JournalPath(), "");
}

std::string ProfileStore::CanonicalEntries() const {
  std::shared_lock lock(mu_);
  Json list = Json::array();
  for (const UserProfile& p : entries_) list.push_back(ToJson(p));
  return list.dump();
}

}  // namespace hearth::profiles
