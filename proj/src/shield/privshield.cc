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

#include "hearth/shield/privshield.h"

#include <algorithm>
#include <numeric>
#include <regex>

#include "hearth/core/errors.h"
#include "hearth/core/hash.h"
#include "hearth/core/prompts.h"
#include "hearth/core/scenario_classifier.h"
#include "hearth/core/serialize.h"
#include "hearth/core/strings.h"
#include "hearth/core/text.h"

namespace hearth::shield {
namespace {

// "1. x", "- x", "* x", "Command 3: x", "Rewritten command: x" → "x".
std::string StripListMarker(std::string_view line) {
  static const std::regex kMarker(
      R"(^\s*([-*•]\s*|\d+\s*[.):]\s*|(rewritten\s+)?command(\s+\d+)?\s*:\s*)+)",
      std::regex::ECMAScript | std::regex::icase);
  std::string s = std::regex_replace(std::string(line), kMarker, "",
                                     std::regex_constants::format_first_only);
  s = Trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
      s.back() == s.front()) {
    s = Trim(std::string_view(s).substr(1, s.size() - 2));
  }
  return s;
}

bool SameText(std::string_view a, std::string_view b) {
  return ToLower(Trim(a)) == ToLower(Trim(b));
}

}  // namespace

absl::StatusOr<RewriteResult> RewriteCommand(llm::LlmBackend& local,
                                             std::string_view command,
                                             const PiiFilter& filter) {
  if (Trim(command).empty()) {
    return absl::InvalidArgumentError("rewrite_command: empty command");
  }
  HEARTH_ASSIGN_OR_RETURN(
      llm::ChatExchange ex,
      local.Chat(prompts::kAssistantSystem, prompts::CommandRewriting(command)));
  std::string paraphrase;
  for (const std::string& line : NonEmptyLines(ex.reply)) {
    paraphrase = StripListMarker(line);
    if (!paraphrase.empty()) break;
  }
  RewriteResult out;
  if (paraphrase.empty()) {
    out.fell_back = true;
    paraphrase = Trim(command);
  }
  Redaction r = filter.Redact(paraphrase);
  out.text = Trim(r.text);
  out.redactions = std::move(r.hits);
  if (out.text.empty()) out.text = std::string(kRedactedPlaceholder);
  return out;
}

absl::StatusOr<DecoySet> GenerateDecoys(llm::LlmBackend& local,
                                        std::string_view rewritten, size_t n,
                                        const PiiFilter& filter,
                                        int retry_budget) {
  DecoySet out;
  if (n == 0) return out;
  const std::optional<Scenario> real_scenario = ClassifyScenario(rewritten);
  const std::string avoid =
      real_scenario ? std::string(ScenarioName(*real_scenario)) : std::string();

  std::vector<std::string> same_scenario;
  auto seen = [&](std::string_view text) {
    if (SameText(text, rewritten)) return true;
    for (const std::string& d : out.decoys) {
      if (SameText(d, text)) return true;
    }
    for (const std::string& d : same_scenario) {
      if (SameText(d, text)) return true;
    }
    return false;
  };

  for (int round = 0; round <= retry_budget && out.decoys.size() < n; ++round) {
    const size_t want = n - out.decoys.size();
    HEARTH_ASSIGN_OR_RETURN(
        llm::ChatExchange ex,
        local.Chat(prompts::kAssistantSystem,
                   prompts::DecoyGeneration(rewritten, want, avoid)));
    for (const std::string& line : NonEmptyLines(ex.reply)) {
      if (out.decoys.size() >= n) break;
      std::string text = Trim(filter.Redact(StripListMarker(line)).text);
      if (text.empty() || seen(text)) continue;
      if (real_scenario && ClassifyScenario(text) == real_scenario) {
        same_scenario.push_back(std::move(text));
        continue;
      }
      out.decoys.push_back(std::move(text));
    }
  }
  for (std::string& text : same_scenario) {
    if (out.decoys.size() >= n) break;
    out.warnings.push_back(StrCat("decoy shares the real command's scenario (",
                                  avoid, "): ", text));
    out.decoys.push_back(std::move(text));
  }
  if (out.decoys.size() < n) {
    return absl::ResourceExhaustedError(
        StrCat("generate_decoys: wanted ", n, " decoys, got ",
               out.decoys.size(), " after ", retry_budget, " retries"));
  }
  return out;
}

AssembledQuery AssembleQuery(std::string rewritten,
                             std::vector<std::string> decoys,
                             uint64_t rng_seed) {
  AssembledQuery out;
  ObfuscationBatch& b = out.batch;
  b.n = decoys.size();
  std::vector<size_t> order(b.n + 1);
  std::iota(order.begin(), order.end(), 0);
  SeededRng rng(rng_seed);
  rng.Shuffle(order);
  for (size_t pos = 0; pos < order.size(); ++pos) {
    const int id = static_cast<int>(pos + 1);
    const size_t src = order[pos];
    b.assignments.emplace_back(id, src == 0 ? rewritten : decoys[src - 1]);
    if (src == 0) b.secret_index = id;
  }
  b.rewritten = std::move(rewritten);
  b.decoys = std::move(decoys);
  out.outbound = prompts::CloudPlans(b.assignments);
  b.batch_id = StrCat("batch-", Sha256Hex(out.outbound).substr(0, 16));
  return out;
}

absl::StatusOr<std::vector<std::pair<int, std::string>>> ParsePlanSections(
    std::string_view reply) {
  static const std::regex kHeader(
      R"(^[\s*#>_-]*plan\s+for\s+command\s+(\d+)[*_]*\s*[:.)-]?[*_]*\s*(.*)$)",
      std::regex::ECMAScript | std::regex::icase);
  std::vector<std::pair<int, std::string>> sections;
  for (std::string_view raw : SplitAny(reply, "\n")) {
    const std::string line(raw);
    std::smatch m;
    if (std::regex_match(line, m, kHeader)) {
      const int id = std::stoi(m[1].str().substr(0, 9));
      for (const auto& [seen_id, unused] : sections) {
        if (seen_id == id) {
          return RecoveryFailureError(
              StrCat("cloud reply has duplicate sections for command ", id));
        }
      }
      sections.emplace_back(id, m[2].str());
    } else if (!sections.empty()) {
      StrAppend(&sections.back().second, "\n", line);
    }
  }
  for (auto& [id, text] : sections) text = Trim(text);
  return sections;
}

absl::StatusOr<RecoveredAdvice> RecoverPlan(const ObfuscationBatch& batch,
                                            std::string_view cloud_reply) {
  if (Trim(cloud_reply).empty()) {
    return RecoveryFailureError("cloud reply is empty");
  }
  HEARTH_ASSIGN_OR_RETURN(auto sections, ParsePlanSections(cloud_reply));
  for (const auto& [id, text] : sections) {
    if (id != batch.secret_index) continue;
    if (text.empty()) {
      return RecoveryFailureError(
          StrCat("cloud reply section for the real command is empty (batch ",
                 batch.batch_id, ")"));
    }
    return RecoveredAdvice{batch.batch_id, text, std::string(cloud_reply)};
  }
  return RecoveryFailureError(StrCat(
      "cloud reply has no section for the real command (batch ",
      batch.batch_id, ")"));
}

LeakContext MakeLeakContext(const HomeConfig& home,
                            const std::vector<std::string>& profile_texts) {
  LeakContext ctx;
  ctx.home_id = home.home_id;
  for (const auto& [id, attrs] : home.state) {
    for (const auto& [k, v] : attrs) {
      ctx.state_fragments.push_back(StrCat(k, "=", v));
    }
  }
  ctx.profile_texts = profile_texts;
  return ctx;
}

std::vector<LeakHit> ScanOutbound(std::string_view outbound,
                                  const LeakContext& context,
                                  const PiiFilter& filter) {
  std::vector<LeakHit> hits;
  const std::string lowered = ToLower(outbound);
  auto contains = [&](std::string_view needle) {
    return !needle.empty() && lowered.find(ToLower(needle)) != std::string::npos;
  };
  if (contains(context.home_id)) hits.push_back({"home_id", context.home_id});
  for (const std::string& f : context.state_fragments) {
    if (contains(f)) hits.push_back({"device_state", f});
  }
  for (const std::string& p : context.profile_texts) {
    if (contains(Trim(p))) hits.push_back({"profile", p});
  }
  for (PiiHit& h : filter.Scan(outbound)) {
    hits.push_back({std::move(h.kind), std::move(h.text)});
  }
  return hits;
}

absl::Status AuditLog::Append(Record record) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!path_.empty()) {
    const Json line = {{"batch_id", record.batch_id},
                       {"n", record.n},
                       {"outbound_sha256", record.outbound_sha256},
                       {"status", record.status}};
    HEARTH_RETURN_IF_ERROR(AppendLine(path_, line.dump()));
  }
  records_.push_back(std::move(record));
  return absl::OkStatus();
}

std::vector<AuditLog::Record> AuditLog::records() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

PrivShield::PrivShield(llm::BackendPtr local, llm::BackendPtr cloud,
                       ShieldConfig config, AuditLog* audit)
    : local_(std::move(local)),
      cloud_(std::move(cloud)),
      config_(std::move(config)),
      audit_(audit) {}

absl::StatusOr<AssembledQuery> PrivShield::Prepare(
    const ConsultRequest& request, std::vector<std::string>* warnings) {
  HEARTH_ASSIGN_OR_RETURN(RewriteResult rewritten,
                          RewriteCommand(*local_, request.command,
                                         config_.filter));
  if (rewritten.fell_back) {
    warnings->push_back("empty paraphrase; using the redacted original");
  }
  if (!rewritten.redactions.empty()) {
    warnings->push_back(StrCat("redacted ", rewritten.redactions.size(),
                               " personal detail(s) from the paraphrase"));
  }
  HEARTH_ASSIGN_OR_RETURN(
      DecoySet decoys,
      GenerateDecoys(*local_, rewritten.text, config_.n, config_.filter,
                     config_.decoy_retry_budget));
  for (std::string& w : decoys.warnings) warnings->push_back(std::move(w));
  AssembledQuery query = AssembleQuery(
      std::move(rewritten.text), std::move(decoys.decoys), request.seed);
  std::vector<LeakHit> leaks =
      ScanOutbound(query.outbound, request.leak_context, config_.filter);
  if (!leaks.empty()) {
    if (audit_ != nullptr) {
      HEARTH_RETURN_IF_ERROR(audit_->Append({query.batch.batch_id,
                                             query.batch.n,
                                             Sha256Hex(query.outbound),
                                             "blocked"}));
    }
    std::vector<std::string> kinds;
    for (const LeakHit& h : leaks) kinds.push_back(h.kind);
    return absl::FailedPreconditionError(
        StrCat("outbound query blocked by leak scan: ", StrJoin(kinds, ", ")));
  }
  return query;
}

absl::StatusOr<ConsultOutcome> PrivShield::Send(AssembledQuery query) {
  const std::string digest = Sha256Hex(query.outbound);
  auto audit = [&](std::string status) -> absl::Status {
    if (audit_ == nullptr) return absl::OkStatus();
    return audit_->Append(
        {query.batch.batch_id, query.batch.n, digest, std::move(status)});
  };
  absl::StatusOr<llm::ChatExchange> reply =
      cloud_->Chat(prompts::kAssistantSystem, query.outbound);
  if (!reply.ok()) {
    HEARTH_RETURN_IF_ERROR(audit("cloud_error"));
    return reply.status();
  }
  absl::StatusOr<RecoveredAdvice> advice =
      RecoverPlan(query.batch, reply->reply);
  if (!advice.ok()) {
    HEARTH_RETURN_IF_ERROR(audit("recovery_failure"));
    return advice.status();
  }
  HEARTH_RETURN_IF_ERROR(audit("recovered"));
  ConsultOutcome out;
  out.batch = std::move(query.batch);
  out.outbound = std::move(query.outbound);
  out.advice = *std::move(advice);
  return out;
}

absl::StatusOr<ConsultOutcome> PrivShield::Consult(
    const ConsultRequest& request) {
  std::vector<std::string> warnings;
  HEARTH_ASSIGN_OR_RETURN(AssembledQuery query, Prepare(request, &warnings));
  HEARTH_ASSIGN_OR_RETURN(ConsultOutcome out, Send(std::move(query)));
  out.warnings = std::move(warnings);
  return out;
}

}  // namespace hearth::shield
