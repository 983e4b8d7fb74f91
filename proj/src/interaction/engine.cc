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

#include "hearth/interaction/engine.h"

#include <algorithm>

#include "hearth/core/errors.h"
#include "hearth/core/hash.h"
#include "hearth/core/scenario_classifier.h"
#include "hearth/core/strings.h"
#include "hearth/inference/device_inference.h"
#include "hearth/profiles/profile.h"

namespace hearth::interaction {
namespace {

constexpr std::string_view kClarificationQuestion =
    "I could not find a device in your home for that request. Which device "
    "should I use?";

Json ProposalEventData(const Proposal& p) {
  return Json{{"source", std::string(ProposalSourceName(p.source))},
              {"plan", ToJson(p.plan)}};
}

}  // namespace

void LoggingDispatcher::Dispatch(const Session& session,
                                 const ActionPlan& plan) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.push_back({session.session_id, session.home_id, plan});
  if (!path_.empty()) {
    const Json line = {{"session_id", session.session_id},
                       {"home_id", session.home_id},
                       {"plan", ToJson(plan)}};
    // Best effort: a failed log write must not undo an accepted plan.
    (void)AppendLine(path_, line.dump());
  }
}

std::vector<LoggingDispatcher::Entry> LoggingDispatcher::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

std::string_view StepKindName(StepKind k) {
  switch (k) {
    case StepKind::kProposal:
      return "proposal";
    case StepKind::kClarification:
      return "clarification";
    case StepKind::kConsentRequested:
      return "consent_requested";
    case StepKind::kDispatched:
      return "dispatched";
    case StepKind::kRecoveryFailure:
      return "recovery_failure";
  }
  return "proposal";
}

Engine::Engine(EngineDeps deps) : deps_(std::move(deps)) {}

Session Engine::NewSession(std::string session_id, std::string user_id,
                           std::string home_id) {
  Session s;
  s.session_id = std::move(session_id);
  s.user_id = std::move(user_id);
  s.home_id = std::move(home_id);
  return s;
}

void Engine::Emit(Session& s, const Turn& t, std::string type, Json data) {
  Event e;
  e.seq = s.events.size() + 1;
  e.type = std::move(type);
  e.turn = t.index;
  e.at = deps_.clock->NowMillis();
  e.data = std::move(data);
  s.events.push_back(std::move(e));
}

uint64_t Engine::BatchSeed(const Session& s, const Turn& t) const {
  return Fnv1a64(StrCat(s.session_id, "/", t.index, "/", t.consents.size()));
}

absl::StatusOr<StepResult> Engine::SubmitCommand(Session& session,
                                                 const HomeConfig& home,
                                                 std::string_view text) {
  if (session.status != SessionStatus::kActive) {
    return absl::FailedPreconditionError(
        StrCat("session ", session.session_id, " is closed"));
  }
  if (session.open_turn() != nullptr) {
    return OrderingError(
        "a plan or consent request is still pending; answer it first");
  }
  const std::string command_text = Trim(text);
  if (command_text.empty()) {
    return absl::InvalidArgumentError("command text must not be empty");
  }

  Turn t;
  t.index = static_cast<int>(session.turns.size()) + 1;
  t.command.id = StrCat(session.session_id, "-t", t.index);
  t.command.text = command_text;
  t.command.scenario =
      ClassifyScenario(command_text).value_or(Scenario::kLighting);
  t.command.provenance = Provenance::kUser;

  if (deps_.profiles) {
    if (profiles::ProfileStore* store = deps_.profiles(session.user_id)) {
      absl::StatusOr<std::vector<profiles::Retrieved>> top =
          store->RetrieveTop(command_text, 3);
      if (top.ok()) {
        for (const profiles::Retrieved& r : *top) t.profiles.push_back(r.text);
      } else {
        t.notes.push_back(StrCat("profile retrieval failed: ",
                                 StatusMessage(top.status())));
      }
    }
  }

  absl::StatusOr<inference::InferenceTrace> trace = inference::RunInference(
      *deps_.local, t.command, home, *deps_.catalog, {}, t.profiles);
  if (!trace.ok()) {
    if (KindOf(trace.status()) != ErrorKind::kNeedsClarification) {
      return trace.status();
    }
    t.state = TurnState::kClarification;
    t.clarification = std::string(kClarificationQuestion);
    t.notes.push_back(StatusMessage(trace.status()));
    session.turns.push_back(std::move(t));
    Turn& stored = session.turns.back();
    Emit(session, stored, "turn_started", {{"command", stored.command.text}});
    Emit(session, stored, "clarification",
         {{"question", stored.clarification}});
    return StepResult{StepKind::kClarification, nullptr, stored.clarification,
                      {}};
  }

  t.comprehensive = trace->comprehensive;
  t.matched = trace->matched;
  Proposal p;
  p.plan = trace->plan;
  p.discrepancies = trace->discrepancies;
  t.proposals.push_back(std::move(p));
  t.state = TurnState::kPendingPlan;
  session.turns.push_back(std::move(t));
  Turn& stored = session.turns.back();
  Emit(session, stored, "turn_started", {{"command", stored.command.text}});
  Emit(session, stored, "proposal", ProposalEventData(stored.proposals.back()));
  return StepResult{StepKind::kProposal, &stored.proposals.back(), {}, {}};
}

absl::StatusOr<const Proposal*> Engine::Regenerate(Session& s, Turn& t,
                                                   const HomeConfig& home,
                                                   std::string advice,
                                                   ProposalSource source,
                                                   std::string batch_id) {
  inference::PlanRequest req;
  req.command = t.command;
  req.matched = t.matched;
  req.home = home;
  req.advice = advice;
  req.profiles = t.profiles;
  HEARTH_ASSIGN_OR_RETURN(inference::PlanOutcome outcome,
                          inference::GeneratePlan(*deps_.local, req,
                                                  *deps_.catalog));
  Proposal p;
  p.plan = std::move(outcome.plan);
  p.source = source;
  p.advice = std::move(advice);
  p.batch_id = std::move(batch_id);
  p.discrepancies = std::move(outcome.discrepancies);
  t.proposals.push_back(std::move(p));
  t.state = TurnState::kPendingPlan;
  Emit(s, t, "proposal", ProposalEventData(t.proposals.back()));
  return &t.proposals.back();
}

void Engine::PrepareConsent(Session& s, Turn& t, const HomeConfig& home) {
  ConsentEvent c;
  c.requested_at = deps_.clock->NowMillis();
  t.prepared.reset();
  Json data = Json::object();
  if (deps_.shield == nullptr) {
    t.notes.push_back("no cloud consultation is configured");
    data["error"] = "no cloud consultation is configured";
  } else {
    shield::ConsultRequest req;
    req.command = t.command.text;
    req.leak_context = shield::MakeLeakContext(home, t.profiles);
    req.seed = BatchSeed(s, t);
    std::vector<std::string> warnings;
    absl::StatusOr<shield::AssembledQuery> q =
        deps_.shield->Prepare(req, &warnings);
    for (std::string& w : warnings) t.notes.push_back(std::move(w));
    if (q.ok()) {
      c.preview = ConsentPreview{q->batch.rewritten, q->batch.n};
      data["rewritten"] = q->batch.rewritten;
      data["n"] = q->batch.n;
      t.prepared = *std::move(q);
    } else {
      t.notes.push_back(
          StrCat("cloud query preparation failed: ", StatusMessage(q.status())));
      data["error"] = StatusMessage(q.status());
    }
  }
  t.consents.push_back(std::move(c));
  t.state = TurnState::kAwaitingConsent;
  Emit(s, t, "consent_requested", std::move(data));
}

absl::StatusOr<StepResult> Engine::GiveVerdict(Session& session,
                                               const HomeConfig& home,
                                               VerdictKind kind,
                                               std::string_view text) {
  Turn* t = session.open_turn();
  if (t == nullptr || t->state != TurnState::kPendingPlan) {
    return OrderingError("no pending plan to give a verdict on");
  }
  if (kind == VerdictKind::kAdvice && Trim(text).empty()) {
    return absl::InvalidArgumentError("advice text must not be empty");
  }
  UserVerdict v{kind, Trim(text), deps_.clock->NowMillis()};
  t->verdicts.push_back(v);
  Emit(session, *t, "verdict",
       {{"kind", std::string(VerdictKindName(kind))}, {"text", v.text}});

  switch (kind) {
    case VerdictKind::kAccept: {
      const ActionPlan& plan = t->proposals.back().plan;
      DeviceSet allowed = home.available;
      for (const DeviceId& id : plan.devices()) {
        if (!allowed.contains(id)) {
          return absl::InternalError(
              StrCat("accepted plan uses unavailable device '", id, "'"));
        }
      }
      t->final_plan = plan;
      t->state = TurnState::kClosed;
      t->consecutive_advice = 0;
      if (deps_.dispatcher != nullptr) deps_.dispatcher->Dispatch(session, plan);
      Emit(session, *t, "dispatch", {{"plan", ToJson(plan)}});

      profiles::ProfileStore* store =
          deps_.profiles ? deps_.profiles(session.user_id) : nullptr;
      if (store != nullptr) {
        profiles::InteractionRecord record;
        record.session_id = session.session_id;
        record.command = t->command.text;
        for (const UserVerdict& uv : t->verdicts) {
          if (uv.kind == VerdictKind::kAdvice) record.advice.push_back(uv.text);
        }
        for (size_t i = 0; i + 1 < t->proposals.size(); ++i) {
          record.rejected_plans.push_back(
              profiles::SummarizePlan(t->proposals[i].plan));
        }
        record.final_plan = plan;
        profiles::DigestResult digest =
            profiles::DigestConversation(*deps_.local, record);
        absl::StatusOr<profiles::UpsertResult> up =
            store->Upsert(digest.fields, digest.fallback);
        if (up.ok()) {
          static constexpr std::string_view kNames[] = {"inserted", "merged",
                                                        "deferred"};
          Emit(session, *t, "profile_upserted",
               {{"result", kNames[static_cast<int>(up->kind)]},
                {"id", up->id},
                {"fallback", digest.fallback}});
        } else {
          t->notes.push_back(
              StrCat("profile upsert failed: ", StatusMessage(up.status())));
          Emit(session, *t, "profile_error",
               {{"message", StatusMessage(up.status())}});
        }
      }
      return StepResult{StepKind::kDispatched, nullptr, "plan dispatched", {}};
    }
    case VerdictKind::kAdvice: {
      ++t->consecutive_advice;
      std::vector<std::string> advice;
      for (const UserVerdict& uv : t->verdicts) {
        if (uv.kind == VerdictKind::kAdvice) advice.push_back(uv.text);
      }
      HEARTH_ASSIGN_OR_RETURN(
          const Proposal* p,
          Regenerate(session, *t, home, StrJoin(advice, "; "),
                     ProposalSource::kLocal, {}));
      StepResult r{StepKind::kProposal, p, {}, {}};
      if (t->consecutive_advice >= kAdviceSuggestRejectAfter) {
        r.suggestions.push_back(
            "Several rounds of advice have not settled the plan; Reject "
            "lets the assistant consult the cloud model with your consent.");
      }
      return r;
    }
    case VerdictKind::kReject: {
      t->consecutive_advice = 0;
      PrepareConsent(session, *t, home);
      const ConsentEvent& c = t->consents.back();
      StepResult r{StepKind::kConsentRequested, nullptr, {}, {}};
      r.message = c.preview
                      ? StrCat("May I consult the cloud model? It would receive \"",
                               c.preview->rewritten, "\" mixed with ",
                               c.preview->n, " decoy commands.")
                      : "Cloud consultation is unavailable right now; deny "
                        "consent for a local alternative.";
      return r;
    }
  }
  return absl::InternalError("unreachable verdict kind");
}

absl::StatusOr<StepResult> Engine::ResolveConsent(Session& session,
                                                  const HomeConfig& home,
                                                  bool granted) {
  Turn* t = session.open_turn();
  if (t == nullptr || t->state != TurnState::kAwaitingConsent ||
      t->consents.empty() || t->consents.back().granted.has_value()) {
    return OrderingError("no pending consent request");
  }
  ConsentEvent& c = t->consents.back();
  c.granted = granted;
  c.resolved_at = deps_.clock->NowMillis();
  Emit(session, *t, "consent", {{"granted", granted}});

  if (!granted) {
    t->prepared.reset();
    HEARTH_ASSIGN_OR_RETURN(
        const Proposal* p,
        Regenerate(session, *t, home, std::string(kVariationNote),
                   ProposalSource::kLocal, {}));
    return StepResult{StepKind::kProposal, p, {}, {}};
  }

  absl::Status failure = absl::OkStatus();
  std::optional<shield::ConsultOutcome> outcome;
  if (!t->prepared) {
    failure = absl::FailedPreconditionError(
        "no prepared cloud query for this consent request");
  } else {
    ++t->cloud_attempts;
    t->used_privshield = true;
    absl::StatusOr<shield::ConsultOutcome> r =
        deps_.shield->Send(*std::move(t->prepared));
    t->prepared.reset();
    if (r.ok()) {
      outcome = *std::move(r);
    } else {
      failure = r.status();
    }
  }
  if (!outcome) {
    t->notes.push_back(
        StrCat("cloud consultation failed: ", StatusMessage(failure)));
    Emit(session, *t, "recovery_failure",
         {{"message", StatusMessage(failure)},
          {"kind", std::string(ErrorKindName(KindOf(failure)))}});
    PrepareConsent(session, *t, home);
    return StepResult{
        StepKind::kRecoveryFailure,
        nullptr,
        StrCat("Cloud advice could not be recovered: ", StatusMessage(failure)),
        {"grant consent again to retry", "deny consent for a local-only plan"}};
  }
  Emit(session, *t, "cloud_advice",
       {{"batch_id", outcome->batch.batch_id}, {"n", outcome->batch.n}});
  HEARTH_ASSIGN_OR_RETURN(
      const Proposal* p,
      Regenerate(session, *t, home, outcome->advice.advice_text,
                 ProposalSource::kCloudAdvised, outcome->batch.batch_id));
  return StepResult{StepKind::kProposal, p, {}, {}};
}

}  // namespace hearth::interaction
