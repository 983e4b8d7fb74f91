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

#include "hearth/service/assistant_service.h"

#include <algorithm>
#include <filesystem>

#include "hearth/core/errors.h"
#include "hearth/core/serialize.h"
#include "hearth/core/strings.h"
#include "hearth/llm/factory.h"

namespace hearth::service {
namespace {

namespace fs = std::filesystem;
using interaction::Session;

uint64_t SessionNumber(std::string_view id) {
  constexpr std::string_view kPrefix = "session-";
  if (id.substr(0, kPrefix.size()) != kPrefix) return 0;
  uint64_t n = 0;
  for (char c : id.substr(kPrefix.size())) {
    if (c < '0' || c > '9') return 0;
    n = n * 10 + static_cast<uint64_t>(c - '0');
  }
  return n;
}

absl::StatusOr<std::map<std::string, HomeConfig>> LoadHomes(
    const std::string& path, const DeviceCatalog& catalog) {
  HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  HEARTH_ASSIGN_OR_RETURN(Json j, ParseJson(text, path));
  if (!j.is_array()) {
    return absl::InvalidArgumentError(StrCat(path, ": expected array of homes"));
  }
  std::map<std::string, HomeConfig> out;
  for (size_t i = 0; i < j.size(); ++i) {
    HEARTH_ASSIGN_OR_RETURN(HomeConfig h,
                            HomeFromJson(j[i], StrCat("homes[", i, "]")));
    HEARTH_RETURN_IF_ERROR(ValidateHome(h, catalog));
    if (out.contains(h.home_id)) {
      return absl::InvalidArgumentError(
          StrCat(path, ": duplicate home_id '", h.home_id, "'"));
    }
    out.emplace(h.home_id, std::move(h));
  }
  return out;
}

Json ProposalJson(const interaction::Proposal& p) {
  return Json{{"plan", ToJson(p.plan)},
              {"source", std::string(interaction::ProposalSourceName(p.source))},
              {"advice", p.advice},
              {"batch_id", p.batch_id},
              {"discrepancies", p.discrepancies}};
}

}  // namespace

AssistantService::AssistantService(AppConfig config, DeviceCatalog catalog)
    : config_(std::move(config)), catalog_(std::move(catalog)) {}

AssistantService::~AssistantService() { (void)Flush(); }

absl::StatusOr<std::unique_ptr<AssistantService>> AssistantService::Create(
    const AppConfig& config, BackendOverrides overrides) {
  DeviceCatalog catalog = DefaultCatalog();
  if (!config.catalog_path.empty()) {
    HEARTH_ASSIGN_OR_RETURN(catalog, LoadCatalogFile(config.catalog_path));
  }
  std::unique_ptr<AssistantService> svc(
      new AssistantService(config, std::move(catalog)));
  HEARTH_RETURN_IF_ERROR(svc->Init(std::move(overrides)));
  return svc;
}

absl::Status AssistantService::Init(BackendOverrides overrides) {
  if (config_.manual_clock) {
    clock_ = std::make_unique<ManualClock>();
  } else {
    clock_ = std::make_unique<SystemClock>();
  }
  auto make = [&](llm::BackendPtr given, const Json& cfg,
                  const char* name) -> absl::StatusOr<llm::BackendPtr> {
    if (given != nullptr) return given;
    return llm::MakeBackend(cfg, name, config_.base_dir);
  };
  HEARTH_ASSIGN_OR_RETURN(
      local_, make(overrides.local, config_.local_backend, "local_slm"));
  HEARTH_ASSIGN_OR_RETURN(cloud_,
                          make(overrides.cloud, config_.cloud_backend, "cloud"));
  HEARTH_ASSIGN_OR_RETURN(
      embedding_,
      make(overrides.embedding, config_.embedding_backend, "embedding"));

  std::error_code ec;
  for (const char* sub : {"sessions", "profiles"}) {
    fs::create_directories(fs::path(config_.data_dir) / sub, ec);
    if (ec) {
      return absl::InternalError(
          StrCat("create ", config_.data_dir, "/", sub, ": ", ec.message()));
    }
  }

  const std::string persisted_homes =
      (fs::path(config_.data_dir) / "homes.json").string();
  HEARTH_ASSIGN_OR_RETURN(
      homes_, LoadHomes(fs::exists(persisted_homes) ? persisted_homes
                                                    : config_.homes_path,
                        catalog_));

  audit_ = std::make_unique<shield::AuditLog>(
      (fs::path(config_.data_dir) / "audit.jsonl").string());
  shield::ShieldConfig sc;
  sc.n = config_.privshield_n;
  sc.filter = shield::PiiFilter(config_.pii_denylist);
  shield_ = std::make_unique<shield::PrivShield>(local_, cloud_, std::move(sc),
                                                 audit_.get());
  dispatcher_ = std::make_unique<interaction::LoggingDispatcher>(
      (fs::path(config_.data_dir) / "dispatch.jsonl").string());

  interaction::EngineDeps deps;
  deps.catalog = &catalog_;
  deps.local = local_;
  deps.shield = shield_.get();
  deps.clock = clock_.get();
  deps.dispatcher = dispatcher_.get();
  deps.profiles = [this](const std::string& user) { return ProfilesFor(user); };
  engine_ = std::make_unique<interaction::Engine>(std::move(deps));

  std::vector<fs::path> files;
  for (const auto& entry :
       fs::directory_iterator(fs::path(config_.data_dir) / "sessions")) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(f.string()));
    HEARTH_ASSIGN_OR_RETURN(Json j, ParseJson(text, f.string()));
    HEARTH_ASSIGN_OR_RETURN(Session s, interaction::SessionFromJson(j));
    next_session_ = std::max(next_session_, SessionNumber(s.session_id) + 1);
    auto slot = std::make_unique<SessionSlot>();
    slot->session = std::move(s);
    sessions_.emplace(slot->session.session_id, std::move(slot));
  }
  return absl::OkStatus();
}

absl::StatusOr<AssistantService::SessionSlot*> AssistantService::FindSession(
    const std::string& id) {
  std::lock_guard<std::mutex> lock(sessions_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    return absl::NotFoundError(StrCat("unknown session '", id, "'"));
  }
  return it->second.get();
}

absl::StatusOr<HomeConfig> AssistantService::HomeFor(const std::string& id) {
  std::lock_guard<std::mutex> lock(homes_mu_);
  auto it = homes_.find(id);
  if (it == homes_.end()) {
    return absl::NotFoundError(StrCat("unknown home '", id, "'"));
  }
  return it->second;
}

absl::StatusOr<profiles::ProfileStore*> AssistantService::OpenProfiles(
    const std::string& user_id) {
  std::lock_guard<std::mutex> lock(profiles_mu_);
  auto it = profiles_.find(user_id);
  if (it != profiles_.end()) return it->second.get();
  profiles::ProfileStoreOptions opts;
  opts.user_id = user_id;
  opts.beta = config_.beta;
  opts.directory = (fs::path(config_.data_dir) / "profiles").string();
  HEARTH_ASSIGN_OR_RETURN(
      std::unique_ptr<profiles::ProfileStore> store,
      profiles::ProfileStore::Open(opts, embedding_, local_, clock_.get()));
  profiles::ProfileStore* raw = store.get();
  profiles_.emplace(user_id, std::move(store));
  return raw;
}

profiles::ProfileStore* AssistantService::ProfilesFor(
    const std::string& user_id) {
  absl::StatusOr<profiles::ProfileStore*> store = OpenProfiles(user_id);
  return store.ok() ? *store : nullptr;
}

absl::Status AssistantService::PersistSession(const Session& s) {
  return WriteFile(
      (fs::path(config_.data_dir) / "sessions" / (s.session_id + ".json"))
          .string(),
      interaction::SessionToJson(s, /*include_private=*/true).dump(1) + "\n");
}

absl::Status AssistantService::PersistHomes() {
  Json list = Json::array();
  for (const auto& [id, h] : homes_) list.push_back(ToJson(h));
  return WriteFile((fs::path(config_.data_dir) / "homes.json").string(),
                   list.dump(1) + "\n");
}

Json AssistantService::StepJson(const Session& s,
                                const interaction::StepResult& r) const {
  Json out = {{"session_id", s.session_id},
              {"kind", std::string(interaction::StepKindName(r.kind))},
              {"message", r.message},
              {"suggestions", r.suggestions}};
  if (!s.turns.empty()) {
    const interaction::Turn& t = s.turns.back();
    out["turn"] = t.index;
    out["state"] = std::string(interaction::TurnStateName(t.state));
    if (t.state == interaction::TurnState::kAwaitingConsent &&
        !t.consents.empty() && t.consents.back().preview) {
      out["consent"] = {{"rewritten", t.consents.back().preview->rewritten},
                        {"n", t.consents.back().preview->n}};
    }
    if (t.final_plan) out["final_plan"] = ToJson(*t.final_plan);
  }
  if (r.proposal != nullptr) out["proposal"] = ProposalJson(*r.proposal);
  return out;
}

absl::StatusOr<Json> AssistantService::CreateSession(
    const std::string& user_id, const std::string& home_id) {
  const std::string user = user_id.empty() ? "default" : user_id;
  if (!IsValidSlug(user)) {
    return absl::InvalidArgumentError(
        StrCat("user_id '", user, "' is not a valid slug"));
  }
  HEARTH_RETURN_IF_ERROR(HomeFor(home_id).status());
  auto slot = std::make_unique<SessionSlot>();
  SessionSlot* raw = slot.get();
  {
    std::lock_guard<std::mutex> lock(sessions_mu_);
    const std::string id = StrCat("session-", next_session_++);
    slot->session = engine_->NewSession(id, user, home_id);
    sessions_.emplace(id, std::move(slot));
  }
  std::lock_guard<std::mutex> lock(raw->mu);
  HEARTH_RETURN_IF_ERROR(PersistSession(raw->session));
  return Json{{"session_id", raw->session.session_id},
              {"user_id", raw->session.user_id},
              {"home_id", raw->session.home_id}};
}

absl::StatusOr<Json> AssistantService::SubmitCommand(
    const std::string& session_id, const std::string& text) {
  HEARTH_ASSIGN_OR_RETURN(SessionSlot * slot, FindSession(session_id));
  std::lock_guard<std::mutex> lock(slot->mu);
  HEARTH_ASSIGN_OR_RETURN(HomeConfig home, HomeFor(slot->session.home_id));
  HEARTH_ASSIGN_OR_RETURN(interaction::StepResult r,
                          engine_->SubmitCommand(slot->session, home, text));
  HEARTH_RETURN_IF_ERROR(PersistSession(slot->session));
  return StepJson(slot->session, r);
}

absl::StatusOr<Json> AssistantService::GiveVerdict(
    const std::string& session_id, const std::string& kind,
    const std::string& text) {
  std::optional<interaction::VerdictKind> k = interaction::ParseVerdictKind(kind);
  if (!k) {
    return absl::InvalidArgumentError(
        StrCat("verdict must be accept, advice or reject, got '", kind, "'"));
  }
  HEARTH_ASSIGN_OR_RETURN(SessionSlot * slot, FindSession(session_id));
  std::lock_guard<std::mutex> lock(slot->mu);
  HEARTH_ASSIGN_OR_RETURN(HomeConfig home, HomeFor(slot->session.home_id));
  absl::StatusOr<interaction::StepResult> r =
      engine_->GiveVerdict(slot->session, home, *k, text);
  // A verdict may be recorded even when regeneration fails afterwards.
  HEARTH_RETURN_IF_ERROR(PersistSession(slot->session));
  if (!r.ok()) return r.status();
  return StepJson(slot->session, *r);
}

absl::StatusOr<Json> AssistantService::ResolveConsent(
    const std::string& session_id, bool granted) {
  HEARTH_ASSIGN_OR_RETURN(SessionSlot * slot, FindSession(session_id));
  std::lock_guard<std::mutex> lock(slot->mu);
  HEARTH_ASSIGN_OR_RETURN(HomeConfig home, HomeFor(slot->session.home_id));
  absl::StatusOr<interaction::StepResult> r =
      engine_->ResolveConsent(slot->session, home, granted);
  HEARTH_RETURN_IF_ERROR(PersistSession(slot->session));
  if (!r.ok()) return r.status();
  return StepJson(slot->session, *r);
}

absl::StatusOr<Json> AssistantService::Transcript(
    const std::string& session_id) {
  HEARTH_ASSIGN_OR_RETURN(SessionSlot * slot, FindSession(session_id));
  std::lock_guard<std::mutex> lock(slot->mu);
  return interaction::SessionToJson(slot->session);
}

absl::StatusOr<std::string> AssistantService::TranscriptHash(
    const std::string& session_id) {
  HEARTH_ASSIGN_OR_RETURN(SessionSlot * slot, FindSession(session_id));
  std::lock_guard<std::mutex> lock(slot->mu);
  return interaction::TranscriptHash(slot->session);
}

absl::StatusOr<std::vector<interaction::Event>> AssistantService::EventsAfter(
    const std::string& session_id, uint64_t after_seq) {
  HEARTH_ASSIGN_OR_RETURN(SessionSlot * slot, FindSession(session_id));
  std::lock_guard<std::mutex> lock(slot->mu);
  std::vector<interaction::Event> out;
  for (const interaction::Event& e : slot->session.events) {
    if (e.seq > after_seq) out.push_back(e);
  }
  return out;
}

absl::StatusOr<Json> AssistantService::ListProfiles(const std::string& user_id) {
  const std::string user = user_id.empty() ? "default" : user_id;
  HEARTH_ASSIGN_OR_RETURN(profiles::ProfileStore * store, OpenProfiles(user));
  Json list = Json::array();
  for (const profiles::UserProfile& p : store->entries()) {
    Json j = profiles::ToJson(p);
    j.erase("embedding");
    j["embedding_dim"] = p.embedding.dim();
    j["text"] = profiles::RenderProfile(p.fields);
    list.push_back(std::move(j));
  }
  return Json{{"user_id", user},
              {"beta", store->options().beta},
              {"deferred", store->deferred_count()},
              {"profiles", list}};
}

absl::StatusOr<Json> AssistantService::CompactProfiles(
    const std::string& user_id) {
  const std::string user = user_id.empty() ? "default" : user_id;
  HEARTH_ASSIGN_OR_RETURN(profiles::ProfileStore * store, OpenProfiles(user));
  HEARTH_ASSIGN_OR_RETURN(profiles::CompactionReport r, store->Compact());
  HEARTH_RETURN_IF_ERROR(store->WriteSnapshot());
  return Json{{"user_id", user},
              {"merges", r.merges},
              {"size_before", r.size_before},
              {"size_after", r.size_after}};
}

Json AssistantService::ListHomes() {
  std::lock_guard<std::mutex> lock(homes_mu_);
  Json list = Json::array();
  for (const auto& [id, h] : homes_) list.push_back(ToJson(h));
  return list;
}

absl::StatusOr<Json> AssistantService::PutHome(const std::string& home_id,
                                               const Json& body) {
  HEARTH_ASSIGN_OR_RETURN(HomeConfig h, HomeFromJson(body, "home"));
  if (h.home_id != home_id) {
    return absl::InvalidArgumentError(StrCat(
        "home.home_id '", h.home_id, "' does not match path id '", home_id, "'"));
  }
  HEARTH_RETURN_IF_ERROR(ValidateHome(h, catalog_));
  std::lock_guard<std::mutex> lock(homes_mu_);
  homes_[home_id] = h;
  HEARTH_RETURN_IF_ERROR(PersistHomes());
  return ToJson(h);
}

Json AssistantService::Stats() {
  std::vector<SessionSlot*> slots;
  {
    std::lock_guard<std::mutex> lock(sessions_mu_);
    for (auto& [id, slot] : sessions_) slots.push_back(slot.get());
  }
  std::sort(slots.begin(), slots.end(), [](SessionSlot* a, SessionSlot* b) {
    return SessionNumber(a->session.session_id) <
           SessionNumber(b->session.session_id);
  });
  std::vector<bool> used;
  Json per = Json::array();
  for (SessionSlot* slot : slots) {
    std::lock_guard<std::mutex> lock(slot->mu);
    interaction::UsageStats u = interaction::ComputeUsage(slot->session);
    for (const interaction::Turn& t : slot->session.turns) {
      used.push_back(t.used_privshield);
    }
    per.push_back({{"session_id", slot->session.session_id},
                   {"turns", u.turns},
                   {"privshield_uses", u.privshield_uses},
                   {"epsilon", u.epsilon}});
  }
  const interaction::UsageStats total = interaction::ComputeUsage(used);
  constexpr size_t kWindow = 10;
  return Json{{"turns", total.turns},
              {"privshield_uses", total.privshield_uses},
              {"epsilon", total.epsilon},
              {"epsilon_window", kWindow},
              {"epsilon_trailing", interaction::TrailingEpsilon(used, kWindow)},
              {"sessions", per},
              {"cloud_calls", cloud_->log().chat_count()}};
}

Json AssistantService::Health() {
  return Json{{"status", "ok"},
              {"version", std::string(kBuildVersion)},
              {"catalog_devices", catalog_.devices().size()},
              {"privshield_n", config_.privshield_n},
              {"local_backend", local_->descriptor().name},
              {"cloud_backend", cloud_->descriptor().name}};
}

absl::Status AssistantService::Flush() {
  std::lock_guard<std::mutex> lock(profiles_mu_);
  absl::Status first = absl::OkStatus();
  for (auto& [user, store] : profiles_) {
    absl::Status s = store->WriteSnapshot();
    if (first.ok() && !s.ok()) first = s;
  }
  return first;
}

}  // namespace hearth::service
