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

#include "hearth/llm/mock_backend.h"

#include <cmath>
#include <thread>

#include "hearth/core/hash.h"
#include "hearth/core/text.h"
#include "hearth/core/types.h"
#include "hearth/core/strings.h"

namespace hearth::llm {
namespace {

using nlohmann::json;

std::string_view TargetName(MatchTarget t) {
  switch (t) {
    case MatchTarget::kUser:
      return "user";
    case MatchTarget::kSystem:
      return "system";
    case MatchTarget::kEither:
      return "either";
  }
  return "user";
}

std::string_view BuiltinName(MockBuiltin b) {
  switch (b) {
    case MockBuiltin::kNone:
      return "none";
    case MockBuiltin::kEcho:
      return "echo";
    case MockBuiltin::kEchoCloud:
      return "echo-cloud";
  }
  return "none";
}

std::string Expand(const std::string& tmpl, std::string_view system_prompt,
                   std::string_view user_prompt, const std::smatch& match) {
  std::vector<std::pair<std::string, std::string>> subs = {
      {"{{user}}", std::string(user_prompt)},
      {"{{system}}", std::string(system_prompt)},
  };
  for (size_t i = 1; i <= 9; ++i) {
    subs.emplace_back(StrCat("{{", i, "}}"),
                      i < match.size() ? match[i].str() : std::string());
  }
  return ReplaceAll(tmpl, subs);
}

}  // namespace

absl::StatusOr<MockScript> MockScriptFromJson(const json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("MockScript: expected object");
  }
  MockScript script;
  if (auto rules = j.find("rules"); rules != j.end()) {
    if (!rules->is_array()) {
      return absl::InvalidArgumentError("MockScript.rules: expected array");
    }
    for (size_t i = 0; i < rules->size(); ++i) {
      const json& r = (*rules)[i];
      const std::string path = StrCat("MockScript.rules[", i, "]");
      if (!r.is_object() || !r.contains("match") || !r["match"].is_string() ||
          !r.contains("reply") || !r["reply"].is_string()) {
        return absl::InvalidArgumentError(
            StrCat(path, ": needs string fields 'match' and 'reply'"));
      }
      MockRule rule;
      rule.pattern = r["match"].get<std::string>();
      rule.reply = r["reply"].get<std::string>();
      rule.icase = r.value("icase", false);
      const std::string target = r.value("target", std::string("user"));
      if (target == "user") {
        rule.target = MatchTarget::kUser;
      } else if (target == "system") {
        rule.target = MatchTarget::kSystem;
      } else if (target == "either") {
        rule.target = MatchTarget::kEither;
      } else {
        return absl::InvalidArgumentError(
            StrCat(path, ".target: unknown target '", target, "'"));
      }
      script.rules.push_back(std::move(rule));
    }
  }
  const std::string builtin = j.value("builtin", std::string("none"));
  if (builtin == "none") {
    script.builtin = MockBuiltin::kNone;
  } else if (builtin == "echo") {
    script.builtin = MockBuiltin::kEcho;
  } else if (builtin == "echo-cloud") {
    script.builtin = MockBuiltin::kEchoCloud;
  } else {
    return absl::InvalidArgumentError(
        StrCat("MockScript.builtin: unknown builtin '", builtin, "'"));
  }
  script.fallback = j.value("fallback", std::string());
  script.delay = std::chrono::milliseconds(j.value("delay_ms", 0));
  script.embedding_dim = j.value("embedding_dim", kMockEmbeddingDim);
  if (script.embedding_dim == 0) {
    return absl::InvalidArgumentError(
        "MockScript.embedding_dim: must be positive");
  }
  return script;
}

json MockScriptToJson(const MockScript& script) {
  json rules = json::array();
  for (const MockRule& r : script.rules) {
    rules.push_back({{"match", r.pattern},
                     {"reply", r.reply},
                     {"icase", r.icase},
                     {"target", std::string(TargetName(r.target))}});
  }
  return json{{"rules", rules},
              {"builtin", std::string(BuiltinName(script.builtin))},
              {"fallback", script.fallback},
              {"delay_ms", script.delay.count()},
              {"embedding_dim", script.embedding_dim}};
}

std::vector<double> HashedBagOfTokens(std::string_view text, size_t dim) {
  std::vector<double> v(dim, 0.0);
  std::vector<std::string> tokens = Tokenize(text);
  if (tokens.empty()) tokens.emplace_back(text);
  for (const std::string& t : tokens) v[Fnv1a64(t) % dim] += 1.0;
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

std::string EchoCloudReply(std::string_view user_prompt) {
  static const std::regex kLine(R"(^\s*Command\s+(\d+)\s*:\s*(.*)$)");
  std::string out;
  for (std::string_view line : SplitAny(user_prompt, "\n")) {
    const std::string s(line);
    std::smatch m;
    if (std::regex_match(s, m, kLine)) {
      StrAppend(&out, "Plan for command ", m[1].str(),
                      ": Handle request: ", Trim(m[2].str()), "\n");
    }
  }
  return out;
}

MockBackend::MockBackend(MockScript script, std::vector<CompiledRule> compiled,
                         BackendDescriptor descriptor)
    : LlmBackend(std::move(descriptor)),
      script_(std::move(script)),
      compiled_(std::move(compiled)) {}

absl::StatusOr<std::shared_ptr<MockBackend>> MockBackend::Create(
    MockScript script, BackendDescriptor descriptor) {
  if (script.rules.empty() && script.builtin == MockBuiltin::kNone &&
      script.fallback.empty()) {
    return absl::InvalidArgumentError(
        "mock script is empty: add rules, a builtin or a fallback");
  }
  std::vector<CompiledRule> compiled;
  for (size_t i = 0; i < script.rules.size(); ++i) {
    const MockRule& rule = script.rules[i];
    try {
      auto flags = std::regex::ECMAScript;
      if (rule.icase) flags |= std::regex::icase;
      compiled.push_back({rule, std::regex(rule.pattern, flags)});
    } catch (const std::regex_error& e) {
      return absl::InvalidArgumentError(StrCat(
          "MockScript.rules[", i, "].match: bad pattern: ", e.what()));
    }
  }
  descriptor.kind = BackendKind::kMock;
  if (descriptor.name.empty()) descriptor.name = "mock";
  return std::shared_ptr<MockBackend>(
      new MockBackend(std::move(script), std::move(compiled),
                      std::move(descriptor)));
}

absl::StatusOr<std::string> MockBackend::DoChat(std::string_view system_prompt,
                                                std::string_view user_prompt) {
  if (script_.delay.count() > 0) std::this_thread::sleep_for(script_.delay);
  const std::string user(user_prompt);
  const std::string system(system_prompt);
  for (const CompiledRule& c : compiled_) {
    std::smatch m;
    const bool user_hit = c.rule.target != MatchTarget::kSystem &&
                          std::regex_search(user, m, c.regex);
    if (user_hit) return Expand(c.rule.reply, system, user, m);
    if (c.rule.target != MatchTarget::kUser &&
        std::regex_search(system, m, c.regex)) {
      return Expand(c.rule.reply, system, user, m);
    }
  }
  switch (script_.builtin) {
    case MockBuiltin::kEcho:
      return user;
    case MockBuiltin::kEchoCloud: {
      std::string reply = EchoCloudReply(user);
      if (!reply.empty()) return reply;
      break;
    }
    case MockBuiltin::kNone:
      break;
  }
  if (!script_.fallback.empty()) return script_.fallback;
  return absl::NotFoundError(
      StrCat(descriptor().name, ": no mock rule matched the prompt"));
}

absl::StatusOr<std::vector<double>> MockBackend::DoEmbed(
    std::string_view text) {
  return HashedBagOfTokens(text, script_.embedding_dim);
}

absl::StatusOr<BackendPtr> MockRuleEngine(MockScript script, std::string name) {
  BackendDescriptor d;
  d.kind = BackendKind::kMock;
  d.name = std::move(name);
  absl::StatusOr<std::shared_ptr<MockBackend>> b =
      MockBackend::Create(std::move(script), std::move(d));
  if (!b.ok()) return b.status();
  return BackendPtr(*std::move(b));
}

}  // namespace hearth::llm
