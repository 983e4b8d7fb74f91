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

#include "hearth/service/script_runner.h"

#include "hearth/core/errors.h"
#include "hearth/core/hash.h"
#include "hearth/core/strings.h"
#include "hearth/interaction/session.h"
#include "httplib.h"

namespace hearth::service {
namespace {

absl::Status AtStep(size_t i, const absl::Status& s) {
  absl::Status out(s.code(), StrCat("step ", i, ": ", StatusMessage(s)));
  if (ErrorKind kind = KindOf(s); kind != ErrorKind::kNone) {
    out = WithKind(out, kind);
  }
  return out;
}

// Turns an HTTP envelope back into a payload or a status.
absl::StatusOr<Json> Unwrap(const httplib::Result& res, const std::string& what) {
  if (!res) {
    return absl::UnavailableError(
        StrCat(what, ": ", httplib::to_string(res.error())));
  }
  absl::StatusOr<Json> body = ParseJson(res->body, what);
  if (!body.ok()) return body.status();
  if (res->status == 200 && body->contains("payload")) {
    return (*body)["payload"];
  }
  std::string message = StrCat("HTTP ", res->status);
  if (body->contains("error") && (*body)["error"].is_object()) {
    message = StrCat(message, " ", (*body)["error"].value("code", ""), ": ",
                     (*body)["error"].value("message", ""));
  }
  return absl::Status(res->status == 404   ? absl::StatusCode::kNotFound
                      : res->status == 400 ? absl::StatusCode::kInvalidArgument
                      : res->status == 409
                          ? absl::StatusCode::kFailedPrecondition
                          : absl::StatusCode::kInternal,
                      StrCat(what, ": ", message));
}

}  // namespace

absl::StatusOr<SessionScript> SessionScriptFromJson(const Json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("script: expected an object");
  }
  SessionScript out;
  if (j.contains("user_id")) {
    HEARTH_ASSIGN_OR_RETURN(out.user_id, GetString(j, "user_id", "script"));
  }
  HEARTH_ASSIGN_OR_RETURN(out.home_id, GetString(j, "home_id", "script"));
  if (!j.contains("steps") || !j["steps"].is_array()) {
    return absl::InvalidArgumentError("script.steps: expected an array");
  }
  for (size_t i = 0; i < j["steps"].size(); ++i) {
    const Json& s = j["steps"][i];
    const std::string path = StrCat("script.steps[", i, "]");
    ScriptStep step;
    const int forms = static_cast<int>(s.is_object() && s.contains("command")) +
                      static_cast<int>(s.is_object() && s.contains("verdict")) +
                      static_cast<int>(s.is_object() && s.contains("consent"));
    if (forms != 1) {
      return absl::InvalidArgumentError(
          StrCat(path, ": need exactly one of command, verdict, consent"));
    }
    if (s.contains("command")) {
      step.kind = ScriptStep::Kind::kCommand;
      HEARTH_ASSIGN_OR_RETURN(step.text, GetString(s, "command", path));
    } else if (s.contains("verdict")) {
      step.kind = ScriptStep::Kind::kVerdict;
      HEARTH_ASSIGN_OR_RETURN(step.verdict, GetString(s, "verdict", path));
      if (!interaction::ParseVerdictKind(step.verdict)) {
        return absl::InvalidArgumentError(
            StrCat(path, ".verdict: unknown verdict '", step.verdict, "'"));
      }
      if (s.contains("text")) {
        HEARTH_ASSIGN_OR_RETURN(step.text, GetString(s, "text", path));
      }
    } else {
      step.kind = ScriptStep::Kind::kConsent;
      if (!s["consent"].is_boolean()) {
        return absl::InvalidArgumentError(StrCat(path, ".consent: expected bool"));
      }
      step.granted = s["consent"].get<bool>();
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

absl::StatusOr<SessionScript> LoadSessionScript(const std::string& path) {
  HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  HEARTH_ASSIGN_OR_RETURN(Json j, ParseJson(text, path));
  return SessionScriptFromJson(j);
}

absl::StatusOr<ScriptResult> RunScript(AssistantService& service,
                                       const SessionScript& script) {
  ScriptResult out;
  HEARTH_ASSIGN_OR_RETURN(Json created,
                          service.CreateSession(script.user_id, script.home_id));
  out.session_id = created["session_id"].get<std::string>();
  for (size_t i = 0; i < script.steps.size(); ++i) {
    const ScriptStep& step = script.steps[i];
    absl::StatusOr<Json> r;
    switch (step.kind) {
      case ScriptStep::Kind::kCommand:
        r = service.SubmitCommand(out.session_id, step.text);
        break;
      case ScriptStep::Kind::kVerdict:
        r = service.GiveVerdict(out.session_id, step.verdict, step.text);
        break;
      case ScriptStep::Kind::kConsent:
        r = service.ResolveConsent(out.session_id, step.granted);
        break;
    }
    if (!r.ok()) return AtStep(i, r.status());
    out.steps.push_back(*std::move(r));
  }
  HEARTH_ASSIGN_OR_RETURN(out.transcript, service.Transcript(out.session_id));
  HEARTH_ASSIGN_OR_RETURN(out.transcript_hash,
                          service.TranscriptHash(out.session_id));
  return out;
}

absl::StatusOr<ScriptResult> RunScriptOverHttp(const std::string& base_url,
                                               const SessionScript& script,
                                               const std::string& token) {
  httplib::Client client(base_url);
  client.set_read_timeout(60, 0);
  httplib::Headers headers;
  if (!token.empty()) headers.emplace("Authorization", StrCat("Bearer ", token));
  auto post = [&](const std::string& path, const Json& body,
                  const std::string& request_id) {
    httplib::Headers h = headers;
    h.emplace("X-Request-Id", request_id);
    return Unwrap(client.Post(path, h, body.dump(), "application/json"), path);
  };

  ScriptResult out;
  HEARTH_ASSIGN_OR_RETURN(
      Json created,
      post("/sessions",
           Json{{"user_id", script.user_id}, {"home_id", script.home_id}},
           "script-create"));
  out.session_id = created["session_id"].get<std::string>();
  const std::string base = StrCat("/sessions/", out.session_id);
  for (size_t i = 0; i < script.steps.size(); ++i) {
    const ScriptStep& step = script.steps[i];
    const std::string rid = StrCat(out.session_id, "-step-", i);
    absl::StatusOr<Json> r;
    switch (step.kind) {
      case ScriptStep::Kind::kCommand:
        r = post(base + "/command", Json{{"text", step.text}}, rid);
        break;
      case ScriptStep::Kind::kVerdict:
        r = post(base + "/verdict",
                 Json{{"kind", step.verdict}, {"text", step.text}}, rid);
        break;
      case ScriptStep::Kind::kConsent:
        r = post(base + "/consent", Json{{"granted", step.granted}}, rid);
        break;
    }
    if (!r.ok()) return AtStep(i, r.status());
    out.steps.push_back(*std::move(r));
  }
  HEARTH_ASSIGN_OR_RETURN(
      out.transcript,
      Unwrap(client.Get(base + "/transcript", headers), base + "/transcript"));
  out.transcript_hash = Sha256Hex(CanonicalDump(out.transcript));
  return out;
}

}  // namespace hearth::service
