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

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "hearth/core/catalog.h"
#include "hearth/core/serialize.h"
#include "hearth/eval/attack.h"
#include "hearth/eval/benchmark.h"
#include "hearth/eval/drs.h"
#include "hearth/eval/latency.h"
#include "test_support.h"

namespace hearth::eval {
namespace {

using ::hearth::testing::CatalogIds;
using ::hearth::testing::DataPath;
using ::hearth::testing::HasKind;
using ::hearth::testing::Mock;
using ::hearth::testing::RandomSubset;
using ::hearth::testing::StatusIs;
using ::testing::StartsWith;

// (|T ∩ P| - |P \ T|) / |P| from set algorithms, reduced by gcd.
std::pair<int64_t, int64_t> OracleDrs(const DeviceSet& t, const DeviceSet& p) {
  std::vector<DeviceId> inter, extra;
  std::set_intersection(t.begin(), t.end(), p.begin(), p.end(),
                        std::back_inserter(inter));
  std::set_difference(p.begin(), p.end(), t.begin(), t.end(),
                      std::back_inserter(extra));
  int64_t num = static_cast<int64_t>(inter.size()) -
                static_cast<int64_t>(extra.size());
  int64_t den = static_cast<int64_t>(p.size());
  const int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / g, den / g};
}

std::vector<Command> Corpus() {
  absl::StatusOr<std::vector<BenchmarkCase>> cases =
      LoadCorpus(DataPath("corpus.json"), DefaultCatalog());
  EXPECT_TRUE(cases.ok()) << cases.status();
  std::vector<Command> out;
  for (const BenchmarkCase& c : *cases) out.push_back(c.command);
  return out;
}

TEST(DrsTest, Examples) {
  EXPECT_EQ(*Drs({"tv", "soundbar"}, {"tv"}), Rational::Of(1, 1));
  EXPECT_EQ(*Drs({"tv", "soundbar"}, {"tv", "kettle"}), Rational::Of(0, 1));
  EXPECT_EQ(*Drs({"tv"}, {"kettle"}), Rational::Of(-1, 1));
  EXPECT_EQ(*Drs({"tv", "soundbar"}, {"tv", "soundbar", "kettle"}),
            Rational::Of(1, 3));
  EXPECT_EQ(Drs({"tv"}, {"kettle", "tv", "dryer", "oven"})->ToString(), "-1/2");
  EXPECT_THAT(Drs({"tv"}, {}), HasKind(ErrorKind::kEmptyPrediction));
}

TEST(DrsTest, RationalNormalizes) {
  EXPECT_EQ(Rational::Of(2, 4), (Rational{1, 2}));
  EXPECT_EQ(Rational::Of(3, -6), (Rational{-1, 2}));
  EXPECT_EQ(Rational::Of(0, 5), (Rational{0, 1}));
  EXPECT_EQ(Rational::Of(4, 2).ToString(), "2");
}

TEST(DrsTest, MatchesOracleAndBounds) {
  SeededRng rng(21);
  const std::vector<DeviceId> ids = CatalogIds();
  bool saw_plus_one = false, saw_minus_one = false;
  for (int i = 0; i < 1000; ++i) {
    const DeviceSet truth = RandomSubset(rng, ids, 0.15);
    DeviceSet predicted = RandomSubset(rng, ids, 0.15);
    if (i % 10 == 0) predicted = truth;
    if (predicted.empty()) continue;
    absl::StatusOr<Rational> s = Drs(truth, predicted);
    ASSERT_TRUE(s.ok());
    const auto [num, den] = OracleDrs(truth, predicted);
    EXPECT_EQ(s->num, num);
    EXPECT_EQ(s->den, den);
    EXPECT_GE(s->value(), -1.0);
    EXPECT_LE(s->value(), 1.0);
    saw_plus_one |= s->num == s->den;
    saw_minus_one |= s->num == -s->den;
  }
  EXPECT_TRUE(saw_plus_one);
  EXPECT_TRUE(saw_minus_one);
}

TEST(BenchmarkTest, CorpusFixture) {
  HEARTH_ASSERT_OK_AND_ASSIGN(
      std::vector<BenchmarkCase> cases,
      LoadCorpus(DataPath("corpus.json"), DefaultCatalog()));
  EXPECT_EQ(cases.size(), 100u);
  EXPECT_FALSE(
      CorpusFromJson(ParseJson(R"([{"id": "x", "command": "c", "scenario": "power", "devices": ["flux"]}])")
                         .value(),
                     DefaultCatalog())
          .ok());
  EXPECT_FALSE(
      CorpusFromJson(ParseJson(R"([{"id": "x", "command": "c", "scenario": "power", "devices": []}])")
                         .value(),
                     DefaultCatalog())
          .ok());
}

TEST(BenchmarkTest, ScoresEmptyAndFailedCases) {
  std::vector<BenchmarkCase> corpus = {
      {{"c3", "third", Scenario::kPower, Provenance::kUser}, {"tv"}},
      {{"c1", "first", Scenario::kPower, Provenance::kUser}, {"tv", "soundbar"}},
      {{"c2", "second", Scenario::kKitchen, Provenance::kUser}, {"kettle"}},
      {{"c4", "fourth", Scenario::kKitchen, Provenance::kUser}, {"kettle"}}};
  const BenchmarkReport r = RunBenchmark(corpus, [](const Command& c)
                                                     -> absl::StatusOr<DeviceSet> {
    if (c.id == "c1") return DeviceSet{"tv"};
    if (c.id == "c2") return NeedsClarificationError("which device?");
    if (c.id == "c3") return DeviceSet{"tv", "kettle"};
    return absl::UnavailableError("backend down");
  });
  ASSERT_EQ(r.cases.size(), 4u);
  EXPECT_EQ(r.cases[0].case_id, "c1");
  EXPECT_EQ(r.cases[1].status, CaseStatus::kEmptyPrediction);
  EXPECT_EQ(r.cases[3].status, CaseStatus::kFailed);
  EXPECT_EQ(r.overall.scored, 2u);
  EXPECT_EQ(r.overall.empty_predictions, 1u);
  EXPECT_EQ(r.overall.failed, 1u);
  EXPECT_DOUBLE_EQ(r.overall.mean, 0.5);  // (1 + 0) / 2
  EXPECT_DOUBLE_EQ(r.overall.variance, 0.25);
  EXPECT_EQ(r.per_scenario.at(Scenario::kPower).scored, 2u);
  EXPECT_EQ(r.per_scenario.at(Scenario::kKitchen).scored, 0u);
}

TEST(BenchmarkTest, RecomputedSummaryMatches) {
  HEARTH_ASSERT_OK_AND_ASSIGN(
      std::vector<BenchmarkCase> cases,
      LoadCorpus(DataPath("corpus.json"), DefaultCatalog()));
  cases.resize(30);
  SeededRng rng(2);
  const std::vector<DeviceId> ids = CatalogIds();
  std::map<std::string, DeviceSet> predictions;
  for (const BenchmarkCase& c : cases) {
    DeviceSet p = RandomSubset(rng, ids, 0.05);
    for (const DeviceId& d : c.ground_truth) {
      if (rng.Unit() < 0.7) p.insert(d);
    }
    predictions[c.command.id] = p;
  }
  const BenchmarkReport r = RunBenchmark(
      cases, [&](const Command& c) -> absl::StatusOr<DeviceSet> {
        const DeviceSet& p = predictions[c.id];
        if (p.empty()) return NeedsClarificationError("none");
        return p;
      });
  double sum = 0;
  std::vector<double> values;
  for (const BenchmarkCase& c : cases) {
    const DeviceSet& p = predictions[c.command.id];
    if (p.empty()) continue;
    const auto [num, den] = OracleDrs(c.ground_truth, p);
    values.push_back(static_cast<double>(num) / den);
    sum += values.back();
  }
  const double mean = sum / values.size();
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= values.size();
  EXPECT_EQ(r.overall.scored, values.size());
  EXPECT_NEAR(r.overall.mean, mean, 1e-12);
  EXPECT_NEAR(r.overall.variance, var, 1e-12);
}

TEST(BenchmarkTest, CsvHeader) {
  const std::string csv = ReportCsv(RunBenchmark({}, nullptr));
  EXPECT_THAT(csv,
              StartsWith("case_id,scenario,status,score,score_value,truth,predicted\n"));
}

TEST(AttackTest, RandomAdversaryRate) {
  const std::vector<Command> corpus = Corpus();
  for (size_t n : {1u, 4u, 9u}) {
    RandomAdversary adversary(n);
    AttackConfig config{n, 4000, 7};
    HEARTH_ASSERT_OK_AND_ASSIGN(
        AttackReport r,
        SimulateAttack(adversary, corpus, CrossScenarioDecoys(corpus), config));
    EXPECT_EQ(r.trials.size(), 4000u);
    EXPECT_NEAR(r.sr(), 1.0 / (n + 1), 0.03) << "n=" << n;
    EXPECT_LT(r.sr(), 1.0);
    EXPECT_EQ(r.cumulative_sr.size(), r.trials.size());
  }
}

TEST(AttackTest, NoDecoysIsAlwaysFound) {
  const std::vector<Command> corpus = Corpus();
  RandomAdversary adversary(1);
  HEARTH_ASSERT_OK_AND_ASSIGN(
      AttackReport r, SimulateAttack(adversary, corpus,
                                     CrossScenarioDecoys(corpus), {0, 200, 1}));
  EXPECT_EQ(r.sr(), 1.0);
}

TEST(AttackTest, KeywordAdversaryBlindAgainstSameScenarioDecoys) {
  const std::vector<Command> corpus = Corpus();
  KeywordAdversary keyword(3);
  HEARTH_ASSERT_OK_AND_ASSIGN(
      AttackReport r, SimulateAttack(keyword, corpus, SameScenarioDecoys(corpus),
                                     {4, 5000, 9}));
  RandomAdversary random(3);
  HEARTH_ASSERT_OK_AND_ASSIGN(
      AttackReport base, SimulateAttack(random, corpus,
                                        SameScenarioDecoys(corpus), {4, 5000, 9}));
  EXPECT_NEAR(r.sr(), base.sr(), 0.05);
  EXPECT_NEAR(r.sr(), 0.2, 0.05);
}

TEST(AttackTest, DecoySourcesRespectScenario) {
  const std::vector<Command> corpus = Corpus();
  SeededRng rng(1);
  const Command& real = corpus[0];
  HEARTH_ASSERT_OK_AND_ASSIGN(std::vector<std::string> cross,
                              CrossScenarioDecoys(corpus)(real, 6, rng));
  HEARTH_ASSERT_OK_AND_ASSIGN(std::vector<std::string> same,
                              SameScenarioDecoys(corpus)(real, 3, rng));
  EXPECT_EQ(cross.size(), 6u);
  EXPECT_EQ(same.size(), 3u);
  auto scenario_of = [&](const std::string& text) {
    for (const Command& c : corpus) {
      if (c.text == text) return c.scenario;
    }
    ADD_FAILURE() << text;
    return real.scenario;
  };
  for (const std::string& t : cross) EXPECT_NE(scenario_of(t), real.scenario);
  for (const std::string& t : same) {
    EXPECT_EQ(scenario_of(t), real.scenario);
    EXPECT_NE(t, real.text);
  }
}

TEST(AttackTest, LlmAdversaryParsesReplies) {
  EXPECT_EQ(ParseRealId("Real: 3"), 3);
  EXPECT_EQ(ParseRealId("I think... real: 12."), 12);
  EXPECT_FALSE(ParseRealId("no idea").has_value());
  LlmAdversary adversary(Mock({{".*", "Real: 2"}}));
  HEARTH_ASSERT_OK_AND_ASSIGN(size_t g, adversary.Guess({"a", "b", "c"}));
  EXPECT_EQ(g, 1u);
  LlmAdversary out_of_range(Mock({{".*", "Real: 9"}}));
  EXPECT_FALSE(out_of_range.Guess({"a", "b"}).ok());
}

TEST(AttackTest, UnusableGuessesAreSkipped) {
  const std::vector<Command> corpus = Corpus();
  LlmAdversary adversary(Mock({{".*", "cannot tell"}}));
  HEARTH_ASSERT_OK_AND_ASSIGN(
      AttackReport r, SimulateAttack(adversary, corpus,
                                     CrossScenarioDecoys(corpus), {4, 10, 1}));
  EXPECT_EQ(r.skipped, 10u);
  EXPECT_TRUE(r.trials.empty());
  EXPECT_EQ(r.sr(), 0.0);
}

TEST(AttackTest, CsvHeader) {
  AttackReport r;
  EXPECT_THAT(AttackReportCsv(r),
              StartsWith("round,batch_size,guessed_id,secret_index,correct,"
                         "cumulative_sr\n"));
}

TEST(OverallSrTest, ProductOfRates) {
  EXPECT_DOUBLE_EQ(*OverallSr(0.2, 0.5), 0.1);
  EXPECT_DOUBLE_EQ(*OverallSr(1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(*OverallSr(0.25, 1.0), 0.25);
  EXPECT_THAT(OverallSr(1.2, 0.5), StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(OverallSr(0.2, -0.1), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(LatencyTest, Percentiles) {
  std::vector<double> v(10);
  std::iota(v.begin(), v.end(), 1.0);
  EXPECT_EQ(Percentile(v, 50), 5.0);
  EXPECT_EQ(Percentile(v, 90), 9.0);
  EXPECT_EQ(Percentile(v, 99), 10.0);
  EXPECT_EQ(Percentile(v, 100), 10.0);
  const LatencyReport r = SummarizeLatency("x", {4, 2, 6});
  EXPECT_DOUBLE_EQ(r.mean_ms, 4.0);
  EXPECT_DOUBLE_EQ(r.variance_ms2, 8.0 / 3.0);
  EXPECT_EQ(r.min_ms, 2.0);
  EXPECT_EQ(r.max_ms, 6.0);
}

TEST(LatencyTest, MeasuresSleepingPipeline) {
  const std::vector<Command> corpus = {
      {"a", "one", Scenario::kPower, Provenance::kUser},
      {"b", "two", Scenario::kPower, Provenance::kUser}};
  int calls = 0;
  HEARTH_ASSERT_OK_AND_ASSIGN(
      LatencyReport r,
      MeasureLatency("sleep", [&](const Command&) {
        ++calls;
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
        return absl::OkStatus();
      }, corpus, 3));
  EXPECT_EQ(calls, 6);
  EXPECT_EQ(r.samples_ms.size(), 6u);
  EXPECT_GE(r.min_ms, 10.0);
  EXPECT_GE(r.variance_ms2, 0.0);
  EXPECT_LE(r.min_ms, r.p50_ms);
  EXPECT_LE(r.p50_ms, r.p90_ms);
  EXPECT_LE(r.p90_ms, r.p99_ms);
  EXPECT_LE(r.p99_ms, r.max_ms);
  Json j = LatencyJson(r);
  EXPECT_EQ(j["label"], "sleep");
}

TEST(LatencyTest, FailuresAreCounted) {
  const std::vector<Command> corpus = {
      {"a", "one", Scenario::kPower, Provenance::kUser}};
  HEARTH_ASSERT_OK_AND_ASSIGN(
      LatencyReport r,
      MeasureLatency("fail", [](const Command&) {
        return absl::UnavailableError("down");
      }, corpus, 2));
  EXPECT_EQ(r.failures, 2u);
  EXPECT_TRUE(r.samples_ms.empty());
}

}  // namespace
}  // namespace hearth::eval
