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

#include "hearth/interaction/session.h"

#include "hearth/core/errors.h"
#include "hearth/core/hash.h"
#include "hearth/core/strings.h"

namespace hearth::interaction {
namespace {

Json ProposalToJson(const Proposal& p) {
  return Json{{"plan", ToJson(p.plan)},
              {"source", std::string(ProposalSourceName(p.source))},
              {"advice", p.advice},
              {"batch_id", p.batch_id},
              {"discrepancies", p.discrepancies}};
}

Json ConsentToJson(const ConsentEvent& c) {
  Json j = {{"requested_at", c.requested_at},
            {"granted", c.granted ? Json(*c.granted) : Json(nullptr)},
            {"resolved_at", c.resolved_at}};
  if (c.preview) {
    j["preview"] = {{"rewritten", c.preview->rewritten}, {"n", c.preview->n}};
  } else {
    j["preview"] = nullptr;
  }
  return j;
}

Json PreparedToJson(const shield::AssembledQuery& q) {
  Json assignments = Json::array();
  for (const auto& [id, text] : q.batch.assignments) {
    assignments.push_back({{"id", id}, {"text", text}});
  }
  return Json{{"batch_id", q.batch.batch_id},
              {"rewritten", q.batch.rewritten},
              {"decoys", q.batch.decoys},
              {"assignments", assignments},
              {"secret_index", q.batch.secret_index},
              {"n", q.batch.n},
              {"outbound", q.outbound}};
}

absl::StatusOr<shield::AssembledQuery> PreparedFromJson(const Json& j,
                                                        std::string_view path) {
  shield::AssembledQuery q;
  HEARTH_ASSIGN_OR_RETURN(q.batch.batch_id, GetString(j, "batch_id", path));
  HEARTH_ASSIGN_OR_RETURN(q.batch.rewritten, GetString(j, "rewritten", path));
  HEARTH_ASSIGN_OR_RETURN(q.batch.decoys, GetStringList(j, "decoys", path));
  HEARTH_ASSIGN_OR_RETURN(int64_t secret, GetInt(j, "secret_index", path));
  HEARTH_ASSIGN_OR_RETURN(int64_t n, GetInt(j, "n", path));
  HEARTH_ASSIGN_OR_RETURN(q.outbound, GetString(j, "outbound", path));
  q.batch.secret_index = static_cast<int>(secret);
  q.batch.n = static_cast<size_t>(n);
  for (const Json& a : j.value("assignments", Json::array())) {
    HEARTH_ASSIGN_OR_RETURN(int64_t id, GetInt(a, "id", path));
    HEARTH_ASSIGN_OR_RETURN(std::string text, GetString(a, "text", path));
    q.batch.assignments.emplace_back(static_cast<int>(id), std::move(text));
  }
  return q;
}

}  // namespace

std::string_view ProposalSourceName(ProposalSource s) {
  return s == ProposalSource::kLocal ? "local" : "cloud-advised";
}

std::string_view VerdictKindName(VerdictKind k) {
  switch (k) {
    case VerdictKind::kAccept:
      return "accept";
    case VerdictKind::kAdvice:
      return "advice";
    case VerdictKind::kReject:
      return "reject";
  }
  return "accept";
}

std::optional<VerdictKind> ParseVerdictKind(std::string_view name) {
  const std::string lowered = ToLower(Trim(name));
  for (VerdictKind k :
       {VerdictKind::kAccept, VerdictKind::kAdvice, VerdictKind::kReject}) {
    if (VerdictKindName(k) == lowered) return k;
  }
  return std::nullopt;
}

std::string_view TurnStateName(TurnState s) {
  switch (s) {
    case TurnState::kPendingPlan:
      return "pending_plan";
    case TurnState::kAwaitingConsent:
      return "awaiting_consent";
    case TurnState::kClarification:
      return "clarification";
    case TurnState::kClosed:
      return "closed";
  }
  return "closed";
}

std::optional<TurnState> ParseTurnState(std::string_view name) {
  for (TurnState s : {TurnState::kPendingPlan, TurnState::kAwaitingConsent,
                      TurnState::kClarification, TurnState::kClosed}) {
    if (TurnStateName(s) == name) return s;
  }
  return std::nullopt;
}

Turn* Session::open_turn() {
  if (turns.empty()) return nullptr;
  Turn& t = turns.back();
  if (t.state == TurnState::kPendingPlan ||
      t.state == TurnState::kAwaitingConsent) {
    return &t;
  }
  return nullptr;
}

const Turn* Session::open_turn() const {
  return const_cast<Session*>(this)->open_turn();
}

Json SessionToJson(const Session& s, bool include_private) {
  Json turns = Json::array();
  for (const Turn& t : s.turns) {
    Json proposals = Json::array();
    for (const Proposal& p : t.proposals) proposals.push_back(ProposalToJson(p));
    Json verdicts = Json::array();
    for (const UserVerdict& v : t.verdicts) {
      verdicts.push_back({{"kind", std::string(VerdictKindName(v.kind))},
                          {"text", v.text},
                          {"at", v.at}});
    }
    Json consents = Json::array();
    for (const ConsentEvent& c : t.consents) consents.push_back(ConsentToJson(c));
    Json turn = {
        {"index", t.index},
        {"command", {{"id", t.command.id}, {"text", t.command.text}}},
        {"comprehensive", ToJson(t.comprehensive)},
        {"matched", ToJson(t.matched)},
        {"profiles", t.profiles},
        {"proposals", proposals},
        {"verdicts", verdicts},
        {"consents", consents},
        {"final_plan", t.final_plan ? ToJson(*t.final_plan) : Json(nullptr)},
        {"state", std::string(TurnStateName(t.state))},
        {"clarification", t.clarification},
        {"consecutive_advice", t.consecutive_advice},
        {"used_privshield", t.used_privshield},
        {"cloud_attempts", t.cloud_attempts},
        {"notes", t.notes},
    };
    if (include_private && t.prepared) {
      turn["prepared"] = PreparedToJson(*t.prepared);
    }
    turns.push_back(std::move(turn));
  }
  Json out = {{"session_id", s.session_id},
              {"user_id", s.user_id},
              {"home_id", s.home_id},
              {"status", s.status == SessionStatus::kActive ? "active" : "closed"},
              {"turns", turns}};
  if (include_private) {
    Json events = Json::array();
    for (const Event& e : s.events) events.push_back(EventToJson(e));
    out["events"] = events;
  }
  return out;
}

Json EventToJson(const Event& e) {
  return Json{{"seq", e.seq},
              {"type", e.type},
              {"turn", e.turn},
              {"at", e.at},
              {"data", e.data}};
}

absl::StatusOr<Session> SessionFromJson(const Json& j) {
  Session s;
  HEARTH_ASSIGN_OR_RETURN(s.session_id, GetString(j, "session_id", "session"));
  HEARTH_ASSIGN_OR_RETURN(s.user_id, GetString(j, "user_id", "session"));
  HEARTH_ASSIGN_OR_RETURN(s.home_id, GetString(j, "home_id", "session"));
  HEARTH_ASSIGN_OR_RETURN(std::string status, GetString(j, "status", "session"));
  s.status = status == "closed" ? SessionStatus::kClosed : SessionStatus::kActive;
  const Json& turns = j.value("turns", Json::array());
  for (size_t i = 0; i < turns.size(); ++i) {
    const std::string path = StrCat("session.turns[", i, "]");
    const Json& tj = turns[i];
    Turn t;
    HEARTH_ASSIGN_OR_RETURN(int64_t index, GetInt(tj, "index", path));
    t.index = static_cast<int>(index);
    const Json& cmd = tj.value("command", Json::object());
    HEARTH_ASSIGN_OR_RETURN(t.command.id, GetString(cmd, "id", path + ".command"));
    HEARTH_ASSIGN_OR_RETURN(t.command.text,
                            GetString(cmd, "text", path + ".command"));
    t.command.provenance = Provenance::kUser;
    HEARTH_ASSIGN_OR_RETURN(
        t.comprehensive,
        DeviceSetFromJson(tj.value("comprehensive", Json::array()),
                          path + ".comprehensive"));
    HEARTH_ASSIGN_OR_RETURN(
        t.matched, DeviceSetFromJson(tj.value("matched", Json::array()),
                                     path + ".matched"));
    HEARTH_ASSIGN_OR_RETURN(t.profiles, GetStringList(tj, "profiles", path));
    for (const Json& pj : tj.value("proposals", Json::array())) {
      Proposal p;
      HEARTH_ASSIGN_OR_RETURN(p.plan, PlanFromJson(pj.at("plan")));
      HEARTH_ASSIGN_OR_RETURN(std::string source,
                              GetString(pj, "source", path + ".proposals"));
      p.source = source == "local" ? ProposalSource::kLocal
                                   : ProposalSource::kCloudAdvised;
      HEARTH_ASSIGN_OR_RETURN(p.advice,
                              GetString(pj, "advice", path + ".proposals"));
      HEARTH_ASSIGN_OR_RETURN(p.batch_id,
                              GetString(pj, "batch_id", path + ".proposals"));
      HEARTH_ASSIGN_OR_RETURN(
          p.discrepancies,
          GetStringList(pj, "discrepancies", path + ".proposals"));
      t.proposals.push_back(std::move(p));
    }
    for (const Json& vj : tj.value("verdicts", Json::array())) {
      UserVerdict v;
      HEARTH_ASSIGN_OR_RETURN(std::string kind,
                              GetString(vj, "kind", path + ".verdicts"));
      std::optional<VerdictKind> k = ParseVerdictKind(kind);
      if (!k) {
        return absl::InvalidArgumentError(
            StrCat(path, ".verdicts: unknown kind '", kind, "'"));
      }
      v.kind = *k;
      HEARTH_ASSIGN_OR_RETURN(v.text, GetString(vj, "text", path + ".verdicts"));
      HEARTH_ASSIGN_OR_RETURN(v.at, GetInt(vj, "at", path + ".verdicts"));
      t.verdicts.push_back(std::move(v));
    }
    for (const Json& cj : tj.value("consents", Json::array())) {
      ConsentEvent c;
      HEARTH_ASSIGN_OR_RETURN(c.requested_at,
                              GetInt(cj, "requested_at", path + ".consents"));
      HEARTH_ASSIGN_OR_RETURN(c.resolved_at,
                              GetInt(cj, "resolved_at", path + ".consents"));
      if (cj.contains("granted") && cj["granted"].is_boolean()) {
        c.granted = cj["granted"].get<bool>();
      }
      if (cj.contains("preview") && cj["preview"].is_object()) {
        ConsentPreview pv;
        HEARTH_ASSIGN_OR_RETURN(
            pv.rewritten,
            GetString(cj["preview"], "rewritten", path + ".consents.preview"));
        HEARTH_ASSIGN_OR_RETURN(
            int64_t n, GetInt(cj["preview"], "n", path + ".consents.preview"));
        pv.n = static_cast<size_t>(n);
        c.preview = std::move(pv);
      }
      t.consents.push_back(std::move(c));
    }
    if (tj.contains("final_plan") && tj["final_plan"].is_object()) {
      HEARTH_ASSIGN_OR_RETURN(ActionPlan plan, PlanFromJson(tj["final_plan"]));
      t.final_plan = std::move(plan);
    }
    HEARTH_ASSIGN_OR_RETURN(std::string state, GetString(tj, "state", path));
    std::optional<TurnState> st = ParseTurnState(state);
    if (!st) {
      return absl::InvalidArgumentError(
          StrCat(path, ".state: unknown '", state, "'"));
    }
    t.state = *st;
    HEARTH_ASSIGN_OR_RETURN(t.clarification,
                            GetString(tj, "clarification", path));
    HEARTH_ASSIGN_OR_RETURN(int64_t adv, GetInt(tj, "consecutive_advice", path));
    t.consecutive_advice = static_cast<int>(adv);
    t.used_privshield = tj.value("used_privshield", false);
    t.cloud_attempts = tj.value("cloud_attempts", 0);
    HEARTH_ASSIGN_OR_RETURN(t.notes, GetStringList(tj, "notes", path));
    if (tj.contains("prepared") && tj["prepared"].is_object()) {
      HEARTH_ASSIGN_OR_RETURN(shield::AssembledQuery q,
                              PreparedFromJson(tj["prepared"], path + ".prepared"));
      t.prepared = std::move(q);
    }
    s.turns.push_back(std::move(t));
  }
  for (const Json& ej : j.value("events", Json::array())) {
    Event e;
    HEARTH_ASSIGN_OR_RETURN(int64_t seq, GetInt(ej, "seq", "session.events"));
    e.seq = static_cast<uint64_t>(seq);
    HEARTH_ASSIGN_OR_RETURN(e.type, GetString(ej, "type", "session.events"));
    HEARTH_ASSIGN_OR_RETURN(int64_t turn, GetInt(ej, "turn", "session.events"));
    e.turn = static_cast<int>(turn);
    HEARTH_ASSIGN_OR_RETURN(e.at, GetInt(ej, "at", "session.events"));
    e.data = ej.value("data", Json::object());
    s.events.push_back(std::move(e));
  }
  return s;
}

std::string TranscriptHash(const Session& s) {
  return Sha256Hex(CanonicalDump(SessionToJson(s)));
}

UsageStats ComputeUsage(const std::vector<bool>& used_per_turn) {
  UsageStats u;
  u.turns = used_per_turn.size();
  for (bool b : used_per_turn) u.privshield_uses += b ? 1 : 0;
  u.epsilon = u.turns == 0 ? 0.0
                           : static_cast<double>(u.privshield_uses) /
                                 static_cast<double>(u.turns);
  return u;
}

UsageStats ComputeUsage(const Session& s) {
  std::vector<bool> used;
  for (const Turn& t : s.turns) used.push_back(t.used_privshield);
  return ComputeUsage(used);
}

std::vector<double> TrailingEpsilon(const std::vector<bool>& used_per_turn,
                                    size_t window) {
  std::vector<double> out;
  if (window == 0 || used_per_turn.size() < window) return out;
  size_t uses = 0;
  for (size_t i = 0; i < used_per_turn.size(); ++i) {
    uses += used_per_turn[i] ? 1 : 0;
    if (i >= window) uses -= used_per_turn[i - window] ? 1 : 0;
    if (i + 1 >= window) {
      out.push_back(static_cast<double>(uses) / static_cast<double>(window));
    }
  }
  return out;
}

}  // namespace hearth::interaction
