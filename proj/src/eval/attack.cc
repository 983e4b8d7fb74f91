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

#include "hearth/eval/attack.h"

#include <regex>

#include "fmt/format.h"
#include "hearth/core/errors.h"
#include "hearth/core/prompts.h"
#include "hearth/core/scenario_classifier.h"
#include "hearth/core/strings.h"
#include "hearth/shield/privshield.h"

namespace hearth::eval {
namespace {

int ScenarioIndex(Scenario s) {
  for (size_t i = 0; i < kAllScenarios.size(); ++i) {
    if (kAllScenarios[i] == s) return static_cast<int>(i);
  }
  return 0;
}

DecoySource FilteredDecoys(std::vector<Command> corpus, bool same) {
  return [corpus = std::move(corpus), same](
             const Command& real, size_t n,
             SeededRng& rng) -> absl::StatusOr<std::vector<std::string>> {
    std::vector<const Command*> pool;
    for (const Command& c : corpus) {
      if (c.text == real.text) continue;
      if ((c.scenario == real.scenario) == same) pool.push_back(&c);
    }
    if (pool.size() < n) {
      return absl::FailedPreconditionError(
          StrCat("decoy pool for ", ScenarioName(real.scenario), " has ",
                 pool.size(), " commands, need ", n));
    }
    // Partial Fisher-Yates: the first n entries are a uniform sample.
    std::vector<std::string> out;
    for (size_t i = 0; i < n; ++i) {
      const size_t j = i + static_cast<size_t>(rng.Below(pool.size() - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]->text);
    }
    return out;
  };
}

}  // namespace

std::string_view AdversaryName(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::kRandom:
      return "random";
    case AdversaryKind::kKeyword:
      return "keyword";
    case AdversaryKind::kLlm:
      return "llm";
  }
  return "random";
}

std::optional<AdversaryKind> ParseAdversary(std::string_view name) {
  for (AdversaryKind k :
       {AdversaryKind::kRandom, AdversaryKind::kKeyword, AdversaryKind::kLlm}) {
    if (AdversaryName(k) == name) return k;
  }
  return std::nullopt;
}

absl::StatusOr<size_t> RandomAdversary::Guess(
    const std::vector<std::string>& texts) {
  if (texts.empty()) return absl::InvalidArgumentError("empty batch");
  return static_cast<size_t>(rng_.Below(texts.size()));
}

absl::StatusOr<size_t> KeywordAdversary::Guess(
    const std::vector<std::string>& texts) {
  if (texts.empty()) return absl::InvalidArgumentError("empty batch");
  std::vector<int64_t> scores;
  int64_t best = -1;
  for (const std::string& t : texts) {
    std::optional<Scenario> s = ClassifyScenario(t);
    const int64_t score = s ? seen_[ScenarioIndex(*s)] : 0;
    scores.push_back(score);
    best = std::max(best, score);
  }
  std::vector<size_t> tied;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] == best) tied.push_back(i);
  }
  const size_t pick = tied[rng_.Below(tied.size())];
  for (const std::string& t : texts) {
    if (std::optional<Scenario> s = ClassifyScenario(t)) {
      ++seen_[ScenarioIndex(*s)];
    }
  }
  return pick;
}

std::optional<int> ParseRealId(std::string_view reply) {
  static const std::regex kReal(R"(real\W{0,3}\s*(?:command\s*)?#?\s*(\d+))",
                                std::regex::ECMAScript | std::regex::icase);
  const std::string s(reply);
  std::smatch m;
  if (!std::regex_search(s, m, kReal)) return std::nullopt;
  const std::string digits = m[1].str();
  if (digits.size() > 6) return std::nullopt;
  return std::stoi(digits);
}

absl::StatusOr<size_t> LlmAdversary::Guess(
    const std::vector<std::string>& texts) {
  std::vector<std::pair<int, std::string>> batch;
  for (size_t i = 0; i < texts.size(); ++i) {
    batch.emplace_back(static_cast<int>(i + 1), texts[i]);
  }
  HEARTH_ASSIGN_OR_RETURN(
      llm::ChatExchange ex,
      backend_->Chat(prompts::kAssistantSystem,
                     prompts::ActivityMonitoring(history_, batch)));
  std::optional<int> id = ParseRealId(ex.reply);
  if (!id || *id < 1 || static_cast<size_t>(*id) > texts.size()) {
    return absl::DataLossError(
        StrCat("attacker reply names no listed command: ", ex.reply));
  }
  history_.push_back(texts[*id - 1]);
  return static_cast<size_t>(*id - 1);
}

DecoySource CrossScenarioDecoys(std::vector<Command> corpus) {
  return FilteredDecoys(std::move(corpus), false);
}

DecoySource SameScenarioDecoys(std::vector<Command> corpus) {
  return FilteredDecoys(std::move(corpus), true);
}

absl::StatusOr<AttackReport> SimulateAttack(Adversary& adversary,
                                            const std::vector<Command>& corpus,
                                            const DecoySource& decoys,
                                            const AttackConfig& config) {
  if (config.rounds == 0) {
    return absl::InvalidArgumentError("simulate_attack: rounds must be >= 1");
  }
  if (corpus.empty()) {
    return absl::InvalidArgumentError("simulate_attack: empty corpus");
  }
  AttackReport report;
  report.adversary = adversary.kind();
  report.n = config.n;
  SeededRng rng(config.seed);
  for (size_t round = 1; round <= config.rounds; ++round) {
    const Command& real = corpus[rng.Below(corpus.size())];
    HEARTH_ASSIGN_OR_RETURN(std::vector<std::string> d,
                            decoys(real, config.n, rng));
    shield::AssembledQuery q = shield::AssembleQuery(real.text, std::move(d),
                                                     rng.Next());
    std::vector<std::string> texts;
    for (const auto& [id, text] : q.batch.assignments) texts.push_back(text);
    absl::StatusOr<size_t> guess = adversary.Guess(texts);
    if (!guess.ok()) {
      ++report.skipped;
      continue;
    }
    AttackTrial t;
    t.round = round;
    t.batch_size = texts.size();
    t.guessed_id = static_cast<int>(*guess + 1);
    t.secret_index = q.batch.secret_index;
    t.correct = t.guessed_id == t.secret_index;
    report.correct += t.correct ? 1 : 0;
    report.trials.push_back(t);
    report.cumulative_sr.push_back(static_cast<double>(report.correct) /
                                   static_cast<double>(report.trials.size()));
  }
  return report;
}

absl::StatusOr<double> OverallSr(double sr_p, double epsilon) {
  if (!(sr_p >= 0 && sr_p <= 1) || !(epsilon >= 0 && epsilon <= 1)) {
    return absl::InvalidArgumentError(
        StrCat("overall_sr: inputs must be in [0, 1], got ", sr_p, " and ",
               epsilon));
  }
  return epsilon * sr_p;
}

Json AttackReportJson(const AttackReport& r) {
  return Json{{"adversary", std::string(AdversaryName(r.adversary))},
              {"n", r.n},
              {"batch_size", r.n + 1},
              {"trials", r.trials.size()},
              {"skipped", r.skipped},
              {"correct", r.correct},
              {"sr", r.sr()},
              {"random_baseline", 1.0 / static_cast<double>(r.n + 1)}};
}

std::string AttackReportCsv(const AttackReport& r) {
  std::string out =
      "round,batch_size,guessed_id,secret_index,correct,cumulative_sr\n";
  for (size_t i = 0; i < r.trials.size(); ++i) {
    const AttackTrial& t = r.trials[i];
    StrAppend(&out, t.round, ",", t.batch_size, ",", t.guessed_id, ",",
              t.secret_index, ",", t.correct ? 1 : 0, ",",
              fmt::format("{:.6f}", r.cumulative_sr[i]), "\n");
  }
  return out;
}

}  // namespace hearth::eval
