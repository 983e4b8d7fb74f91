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

#include "hearth/eval/benchmark.h"

#include <algorithm>

#include "fmt/format.h"
#include "hearth/core/errors.h"
#include "hearth/core/strings.h"

namespace hearth::eval {

std::string_view CaseStatusName(CaseStatus s) {
  switch (s) {
    case CaseStatus::kScored:
      return "scored";
    case CaseStatus::kEmptyPrediction:
      return "empty_prediction";
    case CaseStatus::kFailed:
      return "failed";
  }
  return "failed";
}

absl::StatusOr<std::vector<BenchmarkCase>> CorpusFromJson(
    const Json& j, const DeviceCatalog& catalog) {
  if (!j.is_array()) return absl::InvalidArgumentError("corpus: expected array");
  std::vector<BenchmarkCase> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string path = StrCat("corpus[", i, "]");
    BenchmarkCase c;
    HEARTH_ASSIGN_OR_RETURN(c.command.id, GetString(j[i], "id", path));
    HEARTH_ASSIGN_OR_RETURN(c.command.text, GetString(j[i], "command", path));
    HEARTH_ASSIGN_OR_RETURN(std::string scenario,
                            GetString(j[i], "scenario", path));
    std::optional<Scenario> s = ParseScenario(scenario);
    if (!s) {
      return absl::InvalidArgumentError(
          StrCat(path, ".scenario: unknown '", scenario, "'"));
    }
    c.command.scenario = *s;
    c.command.provenance = Provenance::kUser;
    HEARTH_ASSIGN_OR_RETURN(std::vector<std::string> devices,
                            GetStringList(j[i], "devices", path));
    for (const std::string& d : devices) {
      if (!catalog.contains(d)) {
        return absl::InvalidArgumentError(
            StrCat(path, ".devices: '", d, "' is not a catalog device"));
      }
      c.ground_truth.insert(d);
    }
    if (c.ground_truth.empty()) {
      return absl::InvalidArgumentError(
          StrCat(path, ".devices: ground truth must not be empty"));
    }
    HEARTH_RETURN_IF_ERROR(ValidateCommand(c.command));
    out.push_back(std::move(c));
  }
  return out;
}

absl::StatusOr<std::vector<BenchmarkCase>> LoadCorpus(
    const std::string& path, const DeviceCatalog& catalog) {
  HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  HEARTH_ASSIGN_OR_RETURN(Json j, ParseJson(text, path));
  return CorpusFromJson(j, catalog);
}

Summary Summarize(const std::vector<const CaseResult*>& cases) {
  Summary s;
  double sum = 0;
  for (const CaseResult* c : cases) {
    switch (c->status) {
      case CaseStatus::kScored:
        ++s.scored;
        sum += c->score->value();
        break;
      case CaseStatus::kEmptyPrediction:
        ++s.empty_predictions;
        break;
      case CaseStatus::kFailed:
        ++s.failed;
        break;
    }
  }
  if (s.scored == 0) return s;
  s.mean = sum / static_cast<double>(s.scored);
  double sq = 0;
  for (const CaseResult* c : cases) {
    if (c->status != CaseStatus::kScored) continue;
    const double d = c->score->value() - s.mean;
    sq += d * d;
  }
  s.variance = sq / static_cast<double>(s.scored);
  return s;
}

BenchmarkReport RunBenchmark(const std::vector<BenchmarkCase>& corpus,
                             const Predictor& predict) {
  BenchmarkReport report;
  for (const BenchmarkCase& bc : corpus) {
    CaseResult r;
    r.case_id = bc.command.id;
    r.scenario = bc.command.scenario;
    r.truth = bc.ground_truth;
    absl::StatusOr<DeviceSet> predicted = predict(bc.command);
    if (!predicted.ok() &&
        KindOf(predicted.status()) != ErrorKind::kNeedsClarification) {
      r.status = CaseStatus::kFailed;
      r.error = StatusMessage(predicted.status());
    } else {
      // A clarification request predicts no devices.
      if (predicted.ok()) r.predicted = *predicted;
      absl::StatusOr<Rational> score = Drs(r.truth, r.predicted);
      if (score.ok()) {
        r.score = *score;
      } else {
        r.status = CaseStatus::kEmptyPrediction;
        r.error = StatusMessage(score.status());
      }
    }
    report.cases.push_back(std::move(r));
  }
  std::sort(report.cases.begin(), report.cases.end(),
            [](const CaseResult& a, const CaseResult& b) {
              return a.case_id < b.case_id;
            });
  std::map<Scenario, std::vector<const CaseResult*>> groups;
  std::vector<const CaseResult*> all;
  for (const CaseResult& c : report.cases) {
    groups[c.scenario].push_back(&c);
    all.push_back(&c);
  }
  for (const auto& [scenario, cases] : groups) {
    report.per_scenario[scenario] = Summarize(cases);
  }
  report.overall = Summarize(all);
  return report;
}

std::string ReportCsv(const BenchmarkReport& report) {
  std::string out =
      "case_id,scenario,status,score,score_value,truth,predicted\n";
  for (const CaseResult& c : report.cases) {
    StrAppend(&out, c.case_id, ",", ScenarioName(c.scenario), ",",
              CaseStatusName(c.status), ",",
              c.score ? c.score->ToString() : std::string(), ",",
              c.score ? fmt::format("{:.6f}", c.score->value()) : std::string(),
              ",", StrJoin(c.truth, ";"), ",", StrJoin(c.predicted, ";"), "\n");
  }
  return out;
}

namespace {

Json SummaryJson(const Summary& s) {
  return Json{{"scored", s.scored},
              {"empty_predictions", s.empty_predictions},
              {"failed", s.failed},
              {"mean", s.mean},
              {"variance", s.variance}};
}

}  // namespace

Json ReportJson(const BenchmarkReport& report) {
  Json cases = Json::array();
  for (const CaseResult& c : report.cases) {
    cases.push_back({{"case_id", c.case_id},
                     {"scenario", std::string(ScenarioName(c.scenario))},
                     {"status", std::string(CaseStatusName(c.status))},
                     {"score", c.score ? Json(c.score->ToString()) : Json()},
                     {"score_value", c.score ? Json(c.score->value()) : Json()},
                     {"truth", ToJson(c.truth)},
                     {"predicted", ToJson(c.predicted)},
                     {"error", c.error}});
  }
  Json per = Json::object();
  for (const auto& [s, summary] : report.per_scenario) {
    per[std::string(ScenarioName(s))] = SummaryJson(summary);
  }
  return Json{{"cases", cases},
              {"per_scenario", per},
              {"overall", SummaryJson(report.overall)}};
}

}  // namespace hearth::eval
