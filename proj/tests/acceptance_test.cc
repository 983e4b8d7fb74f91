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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hearth/core/catalog.h"
#include "hearth/core/clock.h"
#include "hearth/core/hash.h"
#include "hearth/core/prompts.h"
#include "hearth/core/serialize.h"
#include "hearth/core/strings.h"
#include "hearth/core/text.h"
#include "hearth/eval/attack.h"
#include "hearth/eval/benchmark.h"
#include "hearth/eval/drs.h"
#include "hearth/forge/command_pool.h"
#include "hearth/forge/dataset_io.h"
#include "hearth/forge/labeling.h"
#include "hearth/forge/rouge.h"
#include "hearth/forge/synthesis.h"
#include "hearth/inference/device_inference.h"
#include "hearth/interaction/engine.h"
#include "hearth/llm/mock_backend.h"
#include "hearth/profiles/profile_store.h"
#include "hearth/service/assistant_service.h"
#include "hearth/service/http_server.h"
#include "hearth/service/script_runner.h"
#include "hearth/shield/privshield.h"
#include "test_support.h"

namespace hearth {
namespace {

using testing::CatalogIds;
using testing::DataMock;
using testing::DataPath;
using testing::EchoCloud;
using testing::GoldenConfig;
using testing::Mock;
using testing::RandomSubset;
using testing::TableEmbedder;
using testing::TempDir;

// Regression goldens. Regenerate only for an intended output change.
constexpr std::string_view kGoldenSessionHash =
    "c335766b457500fd290b4e84b0342e82a88b72e6f42625383f9c0eda183ab26d";
constexpr std::string_view kGoldenForgeJsonlSha256 =
    "66b05fcdb87d2d2a0e59c837d400b40a48329e05e8a1cd5f7e4cb0fbe31bc523";

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Command> CorpusCommands() {
  absl::StatusOr<std::vector<eval::BenchmarkCase>> cases =
      eval::LoadCorpus(DataPath("corpus.json"), DefaultCatalog());
  std::vector<Command> out;
  if (!cases.ok()) return out;
  for (const eval::BenchmarkCase& c : *cases) out.push_back(c.command);
  return out;
}

// 1. DRS agrees exactly with a set-algebra oracle.
Outcome DrsOracle() {
  Outcome o;
  const auto start = Clock::now();
  SeededRng rng(101);
  const std::vector<DeviceId> ids = CatalogIds();
  bool plus = false, minus = false;
  int pairs = 0;
  while (pairs < 1000) {
    const DeviceSet truth = RandomSubset(rng, ids, 0.1 + 0.2 * rng.Unit());
    DeviceSet pred = RandomSubset(rng, ids, 0.1 + 0.2 * rng.Unit());
    if (pairs % 20 == 0) pred = truth;
    if (pairs % 20 == 1) {
      pred.clear();
      for (const DeviceId& d : ids) {
        if (!truth.contains(d) && pred.size() < 3) pred.insert(d);
      }
    }
    if (pred.empty()) continue;
    ++pairs;
    std::vector<DeviceId> inter, extra;
    std::set_intersection(truth.begin(), truth.end(), pred.begin(), pred.end(),
                          std::back_inserter(inter));
    std::set_difference(pred.begin(), pred.end(), truth.begin(), truth.end(),
                        std::back_inserter(extra));
    const int64_t num = static_cast<int64_t>(inter.size() - 0) -
                        static_cast<int64_t>(extra.size());
    const int64_t den = static_cast<int64_t>(pred.size());
    absl::StatusOr<eval::Rational> got = eval::Drs(truth, pred);
    o.Check(got.ok(), "drs returned an error");
    if (!got.ok()) break;
    // Cross-multiplied comparison avoids trusting any normalization.
    o.Check(got->num * den == num * got->den, fmt::format("mismatch at pair {}", pairs));
    o.Check(got->value() >= -1 && got->value() <= 1, "score out of [-1, 1]");
    plus |= num == den;
    minus |= num == -den;
  }
  o.Check(!eval::Drs({"tv"}, {}).ok(), "empty prediction accepted");
  o.Check(plus && minus, "extremes +1 and -1 not attained");
  const double secs = SecondsSince(start);
  o.Check(secs < 5.0, fmt::format("took {:.2f}s", secs));
  if (o.pass) o.detail = fmt::format("1000 pairs exact, +1/-1 attained, {:.2f}s", secs);
  return o;
}

// 2. ROUGE-L agrees with a full-table LCS oracle.
Outcome RougeOracle() {
  Outcome o;
  const auto start = Clock::now();
  static const std::vector<std::string> kVocab = {
      "turn", "on", "off", "the", "light", "lamp", "dim", "tv", "a", "room", "warm"};
  SeededRng rng(202);
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::string> a(rng.Below(15)), b(rng.Below(15));
    for (auto& t : a) t = kVocab[rng.Below(kVocab.size())];
    for (auto& t : b) t = kVocab[rng.Below(kVocab.size())];
    std::vector<std::vector<size_t>> dp(a.size() + 1,
                                        std::vector<size_t>(b.size() + 1, 0));
    for (size_t x = 1; x <= a.size(); ++x) {
      for (size_t y = 1; y <= b.size(); ++y) {
        dp[x][y] = a[x - 1] == b[y - 1] ? dp[x - 1][y - 1] + 1
                                        : std::max(dp[x - 1][y], dp[x][y - 1]);
      }
    }
    const size_t l = dp[a.size()][b.size()];
    const double want =
        a.empty() || b.empty() ? 0.0 : 2.0 * l / static_cast<double>(a.size() + b.size());
    const double got = forge::RougeL(a, b);
    o.Check(std::abs(got - want) < 1e-12, fmt::format("mismatch at pair {}", i));
    o.Check(got == forge::RougeL(b, a), "not symmetric");
  }
  const double known = forge::RougeLText("turn on the light", "turn off the light");
  o.Check(std::abs(known - 0.75) <= 1e-9, fmt::format("known pair scored {}", known));
  const double secs = SecondsSince(start);
  o.Check(secs < 5.0, fmt::format("took {:.2f}s", secs));
  if (o.pass) o.detail = fmt::format("1000 pairs exact, known pair 0.75, {:.2f}s", secs);
  return o;
}

// 3. Every pool pair stays below alpha after seeding plus 200 candidates.
Outcome SimilarityGate() {
  Outcome o;
  absl::StatusOr<std::vector<Command>> seeds = forge::LoadSeeds(DataPath("seeds.json"));
  o.Check(seeds.ok() && seeds->size() == 90, "seeds fixture did not load 90 commands");
  if (!o.pass) return o;
  auto pool = *forge::CommandPool::Create(0.7);
  for (const Command& c : *seeds) pool->Admit(c);
  o.Check(pool->size() == 90, "a seed was rejected by the gate");
  llm::BackendPtr slm = DataMock("local_slm.json", "local-slm");
  forge::SynthesisOptions options;
  options.iterations = 200;
  options.seed = 77;
  absl::StatusOr<forge::SynthesisRun> run = forge::RunSynthesis(*slm, *pool, options);
  o.Check(run.ok(), "synthesis failed");
  if (!o.pass) return o;
  o.Check(run->generated == 200, "not 200 candidates");
  o.Check(run->accepted + run->rejected_similarity + run->rejected_relevance +
                  run->rejected_unparseable == run->generated,
          "counters do not reconcile");
  const std::vector<Command> members = pool->commands();
  o.Check(members.size() == 90 + static_cast<size_t>(run->accepted),
          "pool size does not match accepted count");
  double worst = 0;
  for (size_t i = 0; i < members.size(); ++i) {
    for (size_t j = i + 1; j < members.size(); ++j) {
      worst = std::max(worst, forge::RougeLText(members[i].text, members[j].text));
    }
  }
  o.Check(worst < 0.7, fmt::format("max pairwise ROUGE-L {}", worst));
  if (o.pass) {
    o.detail = fmt::format("{} members, {} accepted, max pairwise {:.4f}",
                           members.size(), run->accepted, worst);
  }
  return o;
}

// Replies with random device lists and plans, including names that are not
// devices and devices the home lacks.
class RandomReplyBackend final : public llm::LlmBackend {
 public:
  explicit RandomReplyBackend(uint64_t seed)
      : LlmBackend(testing::NamedDescriptor("random")), rng_(seed), ids_(CatalogIds()) {}

 protected:
  absl::StatusOr<std::string> DoChat(std::string_view, std::string_view user) override {
    std::vector<std::string> names;
    const size_t k = rng_.Below(7);
    for (size_t i = 0; i < k; ++i) names.push_back(Name());
    if (user.find(prompts::kTaskPlanGeneration) != std::string_view::npos) {
      std::string out;
      for (const std::string& n : names) out += n + " | power | on\n";
      out += "Rationale: random\n";
      return out;
    }
    if (names.empty()) return std::string("none");
    return StrJoin(names, ", ");
  }
  absl::StatusOr<std::vector<double>> DoEmbed(std::string_view) override {
    return absl::UnimplementedError("no embeddings");
  }

 private:
  std::string Name() {
    switch (rng_.Below(4)) {
      case 0:
        return "Warp Drive";
      case 1: {
        const Device* d = DefaultCatalog().Find(ids_[rng_.Below(ids_.size())]);
        return d->display_name;
      }
      default:
        return ids_[rng_.Below(ids_.size())];
    }
  }
  SeededRng rng_;
  std::vector<DeviceId> ids_;
};

// 4. identify → match → plan never escapes the catalog, the home or the
// matched set.
Outcome Containment() {
  Outcome o;
  SeededRng rng(404);
  const std::vector<DeviceId> ids = CatalogIds();
  const DeviceSet catalog = DefaultCatalog().ids();
  auto subset = [](const DeviceSet& a, const DeviceSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  RandomReplyBackend backend(405);
  int violations = 0, planned = 0, clarified = 0;
  for (int i = 0; i < 10000; ++i) {
    HomeConfig home;
    home.home_id = "h";
    home.available = RandomSubset(rng, ids, rng.Unit());
    Command c{fmt::format("c{}", i), "do something", Scenario::kPower, Provenance::kUser};
    absl::StatusOr<inference::InferenceTrace> t =
        inference::RunInference(backend, c, home, DefaultCatalog());
    if (!t.ok()) {
      if (KindOf(t.status()) != ErrorKind::kNeedsClarification) ++violations;
      ++clarified;
      continue;
    }
    ++planned;
    DeviceSet oracle;
    for (const DeviceId& d : t->comprehensive) {
      if (home.available.count(d)) oracle.insert(d);
    }
    if (!subset(t->comprehensive, catalog)) ++violations;
    if (t->matched != oracle) ++violations;
    if (inference::MatchHome(t->comprehensive, home) != oracle) ++violations;
    if (!subset(t->plan.devices(), t->matched)) ++violations;
  }
  o.Check(violations == 0, fmt::format("{} violations", violations));
  o.Check(planned > 1000 && clarified > 0, "trace mix did not cover both paths");
  if (o.pass) {
    o.detail = fmt::format("10000 traces ({} planned, {} clarification), 0 violations",
                           planned, clarified);
  }
  return o;
}

llm::BackendPtr ManyDecoyLocal() {
  std::string reply;
  const std::vector<std::string> templates = {
      "Set the ceiling fan to speed {}", "Preheat the oven to {}0 degrees",
      "Run the dishwasher in {} minutes", "Charge the car to {}0 percent",
      "Start the robot vacuum in room {}", "Set the speaker volume to {}"};
  for (int i = 1; i <= 5; ++i) {
    for (const std::string& t : templates) reply += fmt::format(fmt::runtime(t), i) + "\n";
  }
  return Mock({{"decoy-generation", reply},
               {R"(command-rewriting[\s\S]*?\nCommand: (?:please )?([^\n]*))", "{{1}}"}});
}

// 5. Every batch size recovers the real command's advice and leaks nothing.
Outcome PrivShieldRoundTrip() {
  Outcome o;
  const std::vector<Command> corpus = CorpusCommands();
  o.Check(!corpus.empty(), "corpus did not load");
  if (!o.pass) return o;
  HomeConfig home;
  home.home_id = "home-1";
  home.available = {"thermostat"};
  home.state["thermostat"]["temperature-setpoint"] = "20";
  const shield::LeakContext ctx =
      shield::MakeLeakContext(home, {"Topics: jazz\nPreferences: quiet evenings"});
  const shield::PiiFilter filter({"Alice Moreau"});
  int consults = 0, leaks = 0;
  for (size_t n : {0u, 2u, 4u, 9u, 19u}) {
    llm::BackendPtr local = ManyDecoyLocal();
    llm::BackendPtr cloud = EchoCloud();
    shield::PrivShield shield(local, cloud, {n, 3, filter});
    for (uint64_t seed = 0; seed < 100; ++seed) {
      const Command& c = corpus[seed % corpus.size()];
      const std::string text = c.text + ", Alice Moreau asked";
      absl::StatusOr<shield::ConsultOutcome> out = shield.Consult({text, ctx, seed});
      o.Check(out.ok(), fmt::format("n={} seed={}: {}", n, seed,
                                    out.ok() ? "" : StatusMessage(out.status())));
      if (!out.ok()) return o;
      ++consults;
      o.Check(out->batch.assignments.size() == n + 1, "wrong batch size");
      const std::string want = "Handle request: " + out->batch.rewritten;
      o.Check(out->advice.advice_text == want,
              fmt::format("n={} seed={}: recovered the wrong section", n, seed));
      leaks += static_cast<int>(shield::ScanOutbound(out->outbound, ctx, filter).size());
    }
    o.Check(cloud->log().chat_count() == 100, "not one cloud call per consult");
  }
  o.Check(leaks == 0, fmt::format("{} leak hits", leaks));
  if (o.pass) o.detail = fmt::format("{} consults, 100% recovered, 0 leak hits", consults);
  return o;
}

// 6. A uniform guesser finds the real command at rate 1/(N+1).
Outcome RandomSuccessRate() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<Command> corpus = CorpusCommands();
  std::string summary;
  for (size_t n : {1u, 2u, 4u, 9u, 19u}) {
    eval::RandomAdversary adversary(1000 + n);
    absl::StatusOr<eval::AttackReport> r = eval::SimulateAttack(
        adversary, corpus, eval::CrossScenarioDecoys(corpus), {n, 10000, 600 + n});
    o.Check(r.ok(), "simulation failed");
    if (!r.ok()) return o;
    const double want = 1.0 / static_cast<double>(n + 1);
    o.Check(std::abs(r->sr() - want) <= 0.03,
            fmt::format("N={}: SR {:.4f} vs {:.4f}", n, r->sr(), want));
    o.Check(r->sr() < 1.0, fmt::format("N={}: SR reached 1", n));
    summary += fmt::format(" N={}:{:.3f}", n, r->sr());
  }
  const double secs = SecondsSince(start);
  o.Check(secs < 30.0, fmt::format("took {:.2f}s", secs));
  if (o.pass) o.detail = fmt::format("10000 trials each;{}; {:.2f}s", summary, secs);
  return o;
}

// Runs `turns` engine turns; turn i consults the cloud iff use(i).
std::vector<bool> DriveEngine(int turns, const std::function<bool(int)>& use) {
  HomeConfig home;
  absl::StatusOr<std::string> text = ReadFile(DataPath("homes.json"));
  home = *HomeFromJson((*ParseJson(*text))[0]);
  ManualClock clock;
  llm::BackendPtr local = DataMock("local_slm.json", "local-slm");
  shield::PrivShield shield(local, EchoCloud(), {4, 3, shield::PiiFilter()});
  interaction::EngineDeps deps;
  deps.catalog = &DefaultCatalog();
  deps.local = local;
  deps.shield = &shield;
  deps.clock = &clock;
  interaction::Engine engine(std::move(deps));
  interaction::Session s = engine.NewSession("eps", "u", home.home_id);
  for (int i = 0; i < turns; ++i) {
    if (!engine.SubmitCommand(s, home, "The room feels stuffy").ok()) return {};
    if (use(i)) {
      if (!engine.GiveVerdict(s, home, interaction::VerdictKind::kReject).ok()) return {};
      if (!engine.ResolveConsent(s, home, true).ok()) return {};
    }
    if (!engine.GiveVerdict(s, home, interaction::VerdictKind::kAccept).ok()) return {};
  }
  std::vector<bool> used;
  for (const interaction::Turn& t : s.turns) used.push_back(t.used_privshield);
  return used;
}

// 7. Whole-system rate is epsilon times the per-query rate, and it falls as
// the user stops consulting the cloud.
Outcome EpsilonDecay() {
  Outcome o;
  for (double sr : {0.0, 0.2, 1.0 / 3, 0.5, 1.0}) {
    for (double eps : {0.0, 0.1, 0.25, 0.7, 1.0}) {
      absl::StatusOr<double> got = eval::OverallSr(sr, eps);
      o.Check(got.ok() && *got == sr * eps, fmt::format("overall_sr({}, {})", sr, eps));
    }
  }
  o.Check(!eval::OverallSr(1.5, 0.5).ok(), "out-of-range input accepted");
  // Cloud use thins out block by block. Each block of ten uses a subset of
  // the previous block's positions, so no window of ten gains a use.
  static const std::vector<std::set<int>> kBlocks = {
      {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 2, 4, 6, 8}, {0, 4, 8}, {0, 8}, {0}};
  const std::vector<bool> used =
      DriveEngine(50, [](int i) { return kBlocks[i / 10].contains(i % 10); });
  o.Check(used.size() == 50, "engine run failed");
  if (!o.pass) return o;
  const std::vector<double> eps = interaction::TrailingEpsilon(used, 10);
  for (size_t i = 1; i < eps.size(); ++i) {
    o.Check(eps[i] <= eps[i - 1], fmt::format("trailing epsilon rose at window {}", i));
  }
  const std::vector<Command> corpus = CorpusCommands();
  eval::RandomAdversary adversary(7);
  absl::StatusOr<eval::AttackReport> r = eval::SimulateAttack(
      adversary, corpus, eval::CrossScenarioDecoys(corpus), {4, 2000, 7});
  o.Check(r.ok(), "attack simulation failed");
  if (!o.pass) return o;
  const double first = *eval::OverallSr(r->sr(), eps.front());
  const double last = *eval::OverallSr(r->sr(), eps.back());
  o.Check(last < first, fmt::format("final window SR_h {} not below first {}", last, first));
  if (o.pass) {
    o.detail = fmt::format("SR_p {:.3f}; epsilon {:.2f} -> {:.2f}; SR_h {:.3f} -> {:.3f}",
                           r->sr(), eps.front(), eps.back(), first, last);
  }
  return o;
}

double CosineOracle(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

// 8. Upserts follow a brute-force cosine oracle and survive a restart.
Outcome ProfileStoreOracle() {
  Outcome o;
  TempDir dir;
  auto embedder = std::make_shared<TableEmbedder>();
  llm::BackendPtr merger = Mock({{".*", "unusable"}});
  ManualClock clock;
  profiles::ProfileStoreOptions options;
  options.user_id = "oracle";
  options.directory = dir.path();
  absl::StatusOr<std::unique_ptr<profiles::ProfileStore>> opened =
      profiles::ProfileStore::Open(options, embedder, merger, &clock);
  o.Check(opened.ok(), "store did not open");
  if (!o.pass) return o;
  profiles::ProfileStore& store = **opened;

  // Oracle state: id → vector. Merges keep the survivor's first topic, so
  // the survivor's vector is unchanged.
  std::vector<std::pair<std::string, std::vector<double>>> oracle;
  SeededRng rng(808);
  int inserts = 0, merges = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> v(8);
    for (double& x : v) x = rng.Unit() * 2 - 1;
    const std::string key = fmt::format("k{}", i);
    embedder->Set(key, v);
    std::optional<double> best;
    std::string best_id;
    for (const auto& [id, w] : oracle) {
      const double c = CosineOracle(v, w);
      if (!best || c > *best) {
        best = c;
        best_id = id;
      }
    }
    absl::StatusOr<profiles::UpsertResult> r =
        store.Upsert({{key}, "none stated", "c", "p"});
    o.Check(r.ok(), "upsert failed");
    if (!o.pass) return o;
    if (!best || *best < options.beta) {
      o.Check(r->kind == profiles::UpsertKind::kInserted, fmt::format("upsert {} should insert", i));
      oracle.emplace_back(r->id, v);
      ++inserts;
    } else {
      o.Check(r->kind == profiles::UpsertKind::kMerged && r->id == best_id,
              fmt::format("upsert {} should merge into {}", i, best_id));
      ++merges;
    }
    if (best) {
      o.Check(r->max_similarity && std::abs(*r->max_similarity - *best) < 1e-12,
              "max similarity differs from oracle");
    }
    o.Check(store.size() == oracle.size(), "size accounting off");
    // Top-3 against a linear scan of the current entries.
    std::vector<double> q(8);
    for (double& x : q) x = rng.Unit() * 2 - 1;
    const std::string qkey = fmt::format("q{}", i);
    embedder->Set(qkey, q);
    std::vector<std::pair<double, std::string>> scan;
    for (const auto& [id, w] : oracle) scan.emplace_back(-CosineOracle(q, w), id);
    std::sort(scan.begin(), scan.end());
    absl::StatusOr<std::vector<profiles::Retrieved>> top = store.RetrieveTop(qkey, 3);
    o.Check(top.ok() && top->size() == std::min<size_t>(3, scan.size()), "top-3 size");
    if (!o.pass) return o;
    for (size_t k = 0; k < top->size(); ++k) {
      o.Check((*top)[k].id == scan[k].second, fmt::format("top-3 differs after upsert {}", i));
    }
    if (!o.pass) return o;
  }
  int merge_total = 0;
  for (const profiles::UserProfile& p : store.entries()) merge_total += p.merge_count;
  o.Check(merge_total == 500, fmt::format("merge counts sum to {}", merge_total));
  o.Check(inserts > 20 && merges > 20,
          fmt::format("only {} inserts and {} merges", inserts, merges));

  const std::string before = store.CanonicalEntries();
  auto reopen = [&]() {
    absl::StatusOr<std::unique_ptr<profiles::ProfileStore>> s =
        profiles::ProfileStore::Open(options, embedder, merger, &clock);
    return s.ok() ? s->get()->CanonicalEntries() : std::string("<open failed>");
  };
  o.Check(reopen() == before, "journal replay differs");
  o.Check(store.WriteSnapshot().ok(), "snapshot write failed");
  o.Check(reopen() == before, "snapshot load differs");
  if (o.pass) {
    o.detail = fmt::format("500 upserts ({} inserted, {} merged) match oracle; "
                           "top-3 matched at every state; restart byte-identical",
                           inserts, merges);
  }
  return o;
}

// 9. The golden session is reproducible in-process and over HTTP, and the
// cloud is only contacted after a granted consent.
Outcome GoldenSession() {
  Outcome o;
  absl::StatusOr<service::SessionScript> script =
      service::LoadSessionScript(DataPath("sessions/golden.json"));
  o.Check(script.ok(), "golden script did not load");
  if (!o.pass) return o;
  std::set<std::string> hashes;
  for (int run = 0; run < 10; ++run) {
    TempDir dir;
    auto svc = service::AssistantService::Create(GoldenConfig(dir.path()));
    o.Check(svc.ok(), "service did not start");
    if (!o.pass) return o;
    absl::StatusOr<service::ScriptResult> r = service::RunScript(**svc, *script);
    o.Check(r.ok(), r.ok() ? "" : StatusMessage(r.status()));
    if (!o.pass) return o;
    hashes.insert(r->transcript_hash);
    size_t grants = 0;
    for (const Json& t : r->transcript["turns"]) {
      for (const Json& c : t["consents"]) grants += c.value("granted", false) ? 1 : 0;
    }
    const size_t calls = (*svc)->cloud_backend().log().chat_count();
    o.Check(calls == grants, fmt::format("{} cloud calls for {} grants", calls, grants));
    o.Check(calls == (*svc)->audit().records().size(), "audit does not match cloud calls");
  }
  o.Check(hashes.size() == 1, fmt::format("{} distinct hashes over 10 runs", hashes.size()));
  {
    TempDir dir;
    auto svc = service::AssistantService::Create(GoldenConfig(dir.path()));
    service::HttpServer server(**svc);
    absl::StatusOr<int> port = server.Start("127.0.0.1", 0);
    o.Check(port.ok(), "http server did not start");
    if (!o.pass) return o;
    absl::StatusOr<service::ScriptResult> r = service::RunScriptOverHttp(
        fmt::format("http://127.0.0.1:{}", *port), *script);
    server.Stop();
    o.Check(r.ok() && r->transcript_hash == *hashes.begin(), "HTTP transcript hash differs");
  }
  o.Check(*hashes.begin() == kGoldenSessionHash,
          fmt::format("hash {} differs from the recorded golden", *hashes.begin()));
  if (o.pass) o.detail = fmt::format("hash {} over 10 runs and HTTP", hashes.begin()->substr(0, 16));
  return o;
}

// 10. synth → label → export yields the recorded dataset.
Outcome ForgePipeline() {
  Outcome o;
  absl::StatusOr<std::vector<Command>> seeds = forge::LoadSeeds(DataPath("seeds.json"));
  o.Check(seeds.ok(), "seeds did not load");
  if (!o.pass) return o;
  auto pool = *forge::CommandPool::Create(0.7);
  for (const Command& c : *seeds) pool->Admit(c);
  llm::BackendPtr slm = DataMock("local_slm.json", "local-slm");
  forge::SynthesisOptions options;
  options.iterations = 60;
  options.seed = 10;
  absl::StatusOr<forge::SynthesisRun> run = forge::RunSynthesis(*slm, *pool, options);
  o.Check(run.ok(), "synthesis failed");
  if (!o.pass) return o;
  const std::vector<Command> members = pool->commands();
  absl::StatusOr<forge::LabelingResult> labels =
      forge::LabelCommands(*slm, members, DefaultCatalog());
  o.Check(labels.ok(), "labeling failed");
  if (!o.pass) return o;
  o.Check(labels->examples.size() + labels->quarantine.size() == members.size(),
          "labeled plus quarantined does not equal pool size");
  for (const forge::LabeledExample& e : labels->examples) {
    o.Check(!e.devices.empty(), "empty label set");
    for (const DeviceId& d : e.devices) {
      o.Check(DefaultCatalog().contains(d), "label outside the catalog: " + d);
    }
  }
  for (const forge::QuarantineRecord& q : labels->quarantine) {
    DeviceSet resolved =
        CanonicalizeDeviceSet(SplitDeviceList(q.reply), DefaultCatalog()).ids;
    o.Check(resolved.empty(), "quarantined reply names a catalog device");
  }
  const std::string jsonl = forge::RenderJsonl(labels->examples, DefaultCatalog());
  const std::string digest = Sha256Hex(jsonl);
  o.Check(static_cast<size_t>(std::count(jsonl.begin(), jsonl.end(), '\n')) ==
              labels->examples.size(),
          "one JSONL line per example");
  o.Check(digest == kGoldenForgeJsonlSha256,
          fmt::format("dataset sha256 {} differs from the recorded golden", digest));
  if (o.pass) {
    o.detail = fmt::format("{} examples, {} quarantined, sha256 {}",
                           labels->examples.size(), labels->quarantine.size(),
                           digest.substr(0, 16));
  }
  return o;
}

}  // namespace
}  // namespace hearth

int main() {
  using hearth::Outcome;
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"drs-oracle", hearth::DrsOracle},
      {"rouge-oracle", hearth::RougeOracle},
      {"similarity-gate", hearth::SimilarityGate},
      {"device-containment", hearth::Containment},
      {"privshield-round-trip", hearth::PrivShieldRoundTrip},
      {"random-adversary-sr", hearth::RandomSuccessRate},
      {"epsilon-overall-sr", hearth::EpsilonDecay},
      {"profile-store-oracle", hearth::ProfileStoreOracle},
      {"golden-session", hearth::GoldenSession},
      {"forge-pipeline", hearth::ForgePipeline},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const Outcome o = fn();
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
