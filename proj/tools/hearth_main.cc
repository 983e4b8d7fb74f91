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

// hearth: command-line entry point for the assistant service and pipelines.

#include <csignal>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hearth/core/catalog.h"
#include "hearth/core/errors.h"
#include "hearth/core/serialize.h"
#include "hearth/core/strings.h"
#include "hearth/eval/attack.h"
#include "hearth/eval/benchmark.h"
#include "hearth/eval/latency.h"
#include "hearth/forge/command_pool.h"
#include "hearth/forge/dataset_io.h"
#include "hearth/forge/labeling.h"
#include "hearth/forge/synthesis.h"
#include "hearth/inference/device_inference.h"
#include "hearth/llm/factory.h"
#include "hearth/service/assistant_service.h"
#include "hearth/service/config.h"
#include "hearth/service/http_server.h"
#include "hearth/service/script_runner.h"

namespace hearth {
namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int Fail(const absl::Status& status) {
  std::cerr << Json{{"error",
                     {{"code", service::ErrorCodeFor(status)},
                      {"message", StatusMessage(status)}}}}
                   .dump()
            << "\n";
  return kExitFailure;
}

// Prints to stdout, or writes pretty JSON / raw text to a file.
absl::Status Emit(const std::string& out_path, const std::string& contents) {
  if (out_path.empty() || out_path == "-") {
    std::cout << contents;
    if (!contents.empty() && contents.back() != '\n') std::cout << "\n";
    return absl::OkStatus();
  }
  return WriteFile(out_path, contents);
}

absl::StatusOr<Json> LoadJson(const std::string& path) {
  HEARTH_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  return ParseJson(text, path);
}

// A backend file holds one descriptor, e.g. {"kind": "mock", "script": ...}.
absl::StatusOr<llm::BackendPtr> LoadBackend(const std::string& path,
                                            const std::string& name) {
  HEARTH_ASSIGN_OR_RETURN(Json j, LoadJson(path));
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return llm::MakeBackend(j, name, dir);
}

absl::StatusOr<DeviceCatalog> CatalogOrDefault(const std::string& path) {
  if (path.empty()) return DefaultCatalog();
  return LoadCatalogFile(path);
}

absl::StatusOr<std::unique_ptr<service::AssistantService>> OpenService(
    const std::string& config_path, const std::string& data_dir) {
  HEARTH_ASSIGN_OR_RETURN(service::AppConfig config,
                          service::LoadAppConfig(config_path));
  if (!data_dir.empty()) config.data_dir = data_dir;
  return service::AssistantService::Create(config);
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
  std::string config;
  std::string host;
  int port = -1;
};

absl::Status Serve(const ServeArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(service::AppConfig config,
                          service::LoadAppConfig(a.config));
  const std::string host = a.host.empty() ? config.listen_host : a.host;
  const int port = a.port >= 0 ? a.port : config.listen_port;
  service::HttpOptions options;
  if (!config.auth_token_env.empty()) {
    if (const char* v = std::getenv(config.auth_token_env.c_str())) {
      options.auth_token = v;
    }
  }
  HEARTH_ASSIGN_OR_RETURN(auto svc, service::AssistantService::Create(config));

  // Signals are taken synchronously so shutdown runs on this thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::HttpServer server(*svc, options);
  HEARTH_ASSIGN_OR_RETURN(int bound, server.Start(host, port));
  std::cout << Json{{"listening", StrCat(host, ":", bound)}}.dump() << std::endl;
  int sig = 0;
  sigwait(&signals, &sig);
  server.Stop();
  return svc->Flush();
}

// ---- forge ----------------------------------------------------------------

struct SynthArgs {
  std::string seeds;
  std::string backend;
  std::string out;
  int iterations = 10;
  double alpha = 0.7;
  size_t sample_size = 5;
  uint64_t seed = 1;
  std::string mode = "alternate";
};

absl::Status ForgeSynth(const SynthArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(std::vector<Command> seeds, forge::LoadSeeds(a.seeds));
  HEARTH_ASSIGN_OR_RETURN(llm::BackendPtr backend, LoadBackend(a.backend, "synth"));
  HEARTH_ASSIGN_OR_RETURN(auto pool, forge::CommandPool::Create(a.alpha));
  for (const Command& c : seeds) pool->Admit(c);
  forge::SynthesisOptions options;
  options.iterations = a.iterations;
  options.sample_size = a.sample_size;
  options.seed = a.seed;
  options.mode = a.mode == "vertical"     ? forge::SynthesisMode::kVertical
                 : a.mode == "horizontal" ? forge::SynthesisMode::kHorizontal
                                          : forge::SynthesisMode::kAlternate;
  HEARTH_ASSIGN_OR_RETURN(forge::SynthesisRun run,
                          forge::RunSynthesis(*backend, *pool, options));
  forge::PoolFile file{a.alpha, pool->commands(), std::move(run)};
  return Emit(a.out, forge::PoolToJson(file).dump(2));
}

struct LabelArgs {
  std::string pool;
  std::string backend;
  std::string catalog;
  std::string out;
};

absl::Status ForgeLabel(const LabelArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(Json pool_json, LoadJson(a.pool));
  HEARTH_ASSIGN_OR_RETURN(forge::PoolFile pool, forge::PoolFromJson(pool_json));
  HEARTH_ASSIGN_OR_RETURN(llm::BackendPtr backend, LoadBackend(a.backend, "labeler"));
  HEARTH_ASSIGN_OR_RETURN(DeviceCatalog catalog, CatalogOrDefault(a.catalog));
  HEARTH_ASSIGN_OR_RETURN(
      forge::LabelingResult result,
      forge::LabelCommands(*backend, pool.commands, catalog));
  return Emit(a.out, forge::LabelingToJson(result).dump(2));
}

struct ExportArgs {
  std::string labels;
  std::string catalog;
  std::string out;
};

absl::Status ForgeExport(const ExportArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(Json j, LoadJson(a.labels));
  HEARTH_ASSIGN_OR_RETURN(forge::LabelingResult labels,
                          forge::LabelingFromJson(j));
  HEARTH_ASSIGN_OR_RETURN(DeviceCatalog catalog, CatalogOrDefault(a.catalog));
  if (a.out.empty() || a.out == "-") {
    std::cout << forge::RenderJsonl(labels.examples, catalog);
    return absl::OkStatus();
  }
  return forge::ExportDataset(labels.examples, catalog, a.out);
}

// ---- bench ----------------------------------------------------------------

struct ReportPaths {
  std::string json;
  std::string csv;
};

absl::Status WriteReports(const ReportPaths& p, const Json& json,
                          const std::string& csv) {
  if (!p.csv.empty()) HEARTH_RETURN_IF_ERROR(WriteFile(p.csv, csv));
  return Emit(p.json, json.dump(2));
}

struct DrsArgs {
  std::string corpus;
  std::string target;
  std::string catalog;
  ReportPaths report;
};

absl::Status BenchDrs(const DrsArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(DeviceCatalog catalog, CatalogOrDefault(a.catalog));
  HEARTH_ASSIGN_OR_RETURN(std::vector<eval::BenchmarkCase> corpus,
                          eval::LoadCorpus(a.corpus, catalog));
  HEARTH_ASSIGN_OR_RETURN(llm::BackendPtr backend, LoadBackend(a.target, "target"));
  const eval::BenchmarkReport report =
      eval::RunBenchmark(corpus, [&](const Command& c) {
        return inference::IdentifyComprehensive(*backend, c, catalog);
      });
  return WriteReports(a.report, eval::ReportJson(report),
                      eval::ReportCsv(report));
}

struct AttackArgs {
  std::string corpus;
  std::string catalog;
  std::string adversary = "random";
  std::string decoys = "cross";
  std::string backend;
  size_t n = 4;
  size_t rounds = 1000;
  uint64_t seed = 1;
  ReportPaths report;
};

absl::Status BenchAttack(const AttackArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(DeviceCatalog catalog, CatalogOrDefault(a.catalog));
  HEARTH_ASSIGN_OR_RETURN(std::vector<eval::BenchmarkCase> cases,
                          eval::LoadCorpus(a.corpus, catalog));
  std::vector<Command> corpus;
  for (const eval::BenchmarkCase& c : cases) corpus.push_back(c.command);

  std::optional<eval::AdversaryKind> kind = eval::ParseAdversary(a.adversary);
  if (!kind) {
    return absl::InvalidArgumentError(
        StrCat("--adversary: unknown adversary '", a.adversary, "'"));
  }
  std::unique_ptr<eval::Adversary> adversary;
  switch (*kind) {
    case eval::AdversaryKind::kRandom:
      adversary = std::make_unique<eval::RandomAdversary>(a.seed);
      break;
    case eval::AdversaryKind::kKeyword:
      adversary = std::make_unique<eval::KeywordAdversary>(a.seed);
      break;
    case eval::AdversaryKind::kLlm: {
      if (a.backend.empty()) {
        return absl::InvalidArgumentError("--backend: required for llm");
      }
      HEARTH_ASSIGN_OR_RETURN(llm::BackendPtr b, LoadBackend(a.backend, "attacker"));
      adversary = std::make_unique<eval::LlmAdversary>(std::move(b));
      break;
    }
  }
  const eval::DecoySource decoys = a.decoys == "same"
                                       ? eval::SameScenarioDecoys(corpus)
                                       : eval::CrossScenarioDecoys(corpus);
  eval::AttackConfig config{a.n, a.rounds, a.seed};
  HEARTH_ASSIGN_OR_RETURN(
      eval::AttackReport report,
      eval::SimulateAttack(*adversary, corpus, decoys, config));
  return WriteReports(a.report, eval::AttackReportJson(report),
                      eval::AttackReportCsv(report));
}

struct LatencyArgs {
  std::string config;
  std::string corpus;
  std::string home;
  size_t repetitions = 1;
  std::string out;
};

absl::Status BenchLatency(const LatencyArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(service::AppConfig config,
                          service::LoadAppConfig(a.config));
  HEARTH_ASSIGN_OR_RETURN(DeviceCatalog catalog,
                          CatalogOrDefault(config.catalog_path));
  HEARTH_ASSIGN_OR_RETURN(std::vector<eval::BenchmarkCase> cases,
                          eval::LoadCorpus(a.corpus, catalog));
  HEARTH_ASSIGN_OR_RETURN(Json homes_json, LoadJson(config.homes_path));
  if (!homes_json.is_array() || homes_json.empty()) {
    return absl::InvalidArgumentError("homes: expected a non-empty array");
  }
  std::optional<HomeConfig> home;
  for (size_t i = 0; i < homes_json.size(); ++i) {
    HEARTH_ASSIGN_OR_RETURN(HomeConfig h,
                            HomeFromJson(homes_json[i], StrCat("homes[", i, "]")));
    if (a.home.empty() || h.home_id == a.home) {
      home = std::move(h);
      break;
    }
  }
  if (!home) return absl::NotFoundError(StrCat("home '", a.home, "' not found"));
  HEARTH_ASSIGN_OR_RETURN(
      llm::BackendPtr local,
      llm::MakeBackend(config.local_backend, "local_slm", config.base_dir));
  std::vector<Command> corpus;
  for (const eval::BenchmarkCase& c : cases) corpus.push_back(c.command);
  HEARTH_ASSIGN_OR_RETURN(
      eval::LatencyReport report,
      eval::MeasureLatency(
          local->descriptor().name,
          [&](const Command& c) {
            return inference::RunInference(*local, c, *home, catalog).status();
          },
          corpus, a.repetitions));
  return Emit(a.out, eval::LatencyJson(report).dump(2));
}

// ---- profiles / session ---------------------------------------------------

struct ProfilesArgs {
  std::string config;
  std::string data_dir;
  std::string user = "default";
};

absl::Status ProfilesList(const ProfilesArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(auto svc, OpenService(a.config, a.data_dir));
  HEARTH_ASSIGN_OR_RETURN(Json list, svc->ListProfiles(a.user));
  return Emit("", list.dump(2));
}

absl::Status ProfilesCompact(const ProfilesArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(auto svc, OpenService(a.config, a.data_dir));
  HEARTH_ASSIGN_OR_RETURN(Json report, svc->CompactProfiles(a.user));
  HEARTH_RETURN_IF_ERROR(svc->Flush());
  return Emit("", report.dump(2));
}

struct SessionArgs {
  std::string config;
  std::string data_dir;
  std::string script;
  std::string expect_hash;
  std::string transcript_out;
};

absl::Status SessionRun(const SessionArgs& a) {
  HEARTH_ASSIGN_OR_RETURN(service::SessionScript script,
                          service::LoadSessionScript(a.script));
  HEARTH_ASSIGN_OR_RETURN(auto svc, OpenService(a.config, a.data_dir));
  HEARTH_ASSIGN_OR_RETURN(service::ScriptResult result,
                          service::RunScript(*svc, script));
  HEARTH_RETURN_IF_ERROR(svc->Flush());
  if (!a.transcript_out.empty()) {
    HEARTH_RETURN_IF_ERROR(
        WriteFile(a.transcript_out, result.transcript.dump(2) + "\n"));
  }
  std::cout << Json{{"session_id", result.session_id},
                    {"steps", result.steps.size()},
                    {"transcript_hash", result.transcript_hash}}
                   .dump()
            << "\n";
  if (!a.expect_hash.empty() && a.expect_hash != result.transcript_hash) {
    return absl::FailedPreconditionError(
        StrCat("transcript hash ", result.transcript_hash, " != expected ",
               a.expect_hash));
  }
  return absl::OkStatus();
}

int Main(int argc, char** argv) {
  CLI::App app{"hearth: on-device smart-home assistant"};
  app.require_subcommand(1);
  absl::Status status = absl::OkStatus();
  auto run = [&status](auto fn) {
    return [&status, fn]() { status = fn(); };
  };

  ServeArgs serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", serve.config, "App config file")->required();
  serve_cmd->add_option("--host", serve.host, "Override listen host");
  serve_cmd->add_option("--port", serve.port, "Override listen port (0: any)");
  serve_cmd->callback(run([&] { return Serve(serve); }));

  CLI::App* forge_cmd = app.add_subcommand("forge", "Dataset synthesis");
  forge_cmd->require_subcommand(1);
  SynthArgs synth;
  CLI::App* synth_cmd = forge_cmd->add_subcommand("synth", "Grow the pool");
  synth_cmd->add_option("--seeds", synth.seeds, "Seeds file")->required();
  synth_cmd->add_option("--backend", synth.backend, "Backend file")->required();
  synth_cmd->add_option("--iterations", synth.iterations)->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--alpha", synth.alpha)->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--sample-size", synth.sample_size);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--mode", synth.mode)
      ->check(CLI::IsMember({"alternate", "vertical", "horizontal"}));
  synth_cmd->add_option("--out", synth.out, "Pool file (default stdout)");
  synth_cmd->callback(run([&] { return ForgeSynth(synth); }));

  LabelArgs label;
  CLI::App* label_cmd = forge_cmd->add_subcommand("label", "Label a pool");
  label_cmd->add_option("--pool", label.pool)->required();
  label_cmd->add_option("--backend", label.backend)->required();
  label_cmd->add_option("--catalog", label.catalog);
  label_cmd->add_option("--out", label.out);
  label_cmd->callback(run([&] { return ForgeLabel(label); }));

  ExportArgs exp;
  CLI::App* export_cmd = forge_cmd->add_subcommand("export", "Write JSONL");
  export_cmd->add_option("--labels", exp.labels)->required();
  export_cmd->add_option("--catalog", exp.catalog);
  export_cmd->add_option("--out", exp.out);
  export_cmd->callback(run([&] { return ForgeExport(exp); }));

  CLI::App* bench_cmd = app.add_subcommand("bench", "Evaluation");
  bench_cmd->require_subcommand(1);
  DrsArgs drs;
  CLI::App* drs_cmd = bench_cmd->add_subcommand("drs", "Device recall score");
  drs_cmd->add_option("--corpus", drs.corpus)->required();
  drs_cmd->add_option("--target", drs.target, "Backend under test")->required();
  drs_cmd->add_option("--catalog", drs.catalog);
  drs_cmd->add_option("--json", drs.report.json);
  drs_cmd->add_option("--csv", drs.report.csv);
  drs_cmd->callback(run([&] { return BenchDrs(drs); }));

  AttackArgs attack;
  CLI::App* attack_cmd = bench_cmd->add_subcommand("attack", "Attack simulation");
  attack_cmd->add_option("--corpus", attack.corpus)->required();
  attack_cmd->add_option("--catalog", attack.catalog);
  attack_cmd->add_option("--adversary", attack.adversary)
      ->check(CLI::IsMember({"random", "keyword", "llm"}));
  attack_cmd->add_option("--decoys", attack.decoys)
      ->check(CLI::IsMember({"cross", "same"}));
  attack_cmd->add_option("--backend", attack.backend);
  attack_cmd->add_option("--n", attack.n);
  attack_cmd->add_option("--rounds", attack.rounds)->check(CLI::PositiveNumber);
  attack_cmd->add_option("--seed", attack.seed);
  attack_cmd->add_option("--json", attack.report.json);
  attack_cmd->add_option("--csv", attack.report.csv);
  attack_cmd->callback(run([&] { return BenchAttack(attack); }));

  LatencyArgs latency;
  CLI::App* latency_cmd = bench_cmd->add_subcommand("latency", "Response time");
  latency_cmd->add_option("--config", latency.config)->required();
  latency_cmd->add_option("--corpus", latency.corpus)->required();
  latency_cmd->add_option("--home", latency.home);
  latency_cmd->add_option("--repetitions", latency.repetitions)
      ->check(CLI::PositiveNumber);
  latency_cmd->add_option("--out", latency.out);
  latency_cmd->callback(run([&] { return BenchLatency(latency); }));

  CLI::App* profiles_cmd = app.add_subcommand("profiles", "Profile store");
  profiles_cmd->require_subcommand(1);
  ProfilesArgs profiles;
  for (const char* name : {"list", "compact"}) {
    CLI::App* sub = profiles_cmd->add_subcommand(name);
    sub->add_option("--config", profiles.config)->required();
    sub->add_option("--data-dir", profiles.data_dir);
    sub->add_option("--user", profiles.user);
    if (std::string(name) == "list") {
      sub->callback(run([&] { return ProfilesList(profiles); }));
    } else {
      sub->callback(run([&] { return ProfilesCompact(profiles); }));
    }
  }

  CLI::App* session_cmd = app.add_subcommand("session", "Sessions");
  session_cmd->require_subcommand(1);
  SessionArgs session;
  CLI::App* session_run = session_cmd->add_subcommand("run", "Headless script");
  session_run->add_option("--config", session.config)->required();
  session_run->add_option("--script", session.script)->required();
  session_run->add_option("--data-dir", session.data_dir);
  session_run->add_option("--expect-hash", session.expect_hash);
  session_run->add_option("--transcript-out", session.transcript_out);
  session_run->callback(run([&] { return SessionRun(session); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << Json{{"error", {{"code", "usage"}, {"message", e.what()}}}}.dump()
              << "\n";
    return kExitUsage;
  }
  return status.ok() ? 0 : Fail(status);
}

}  // namespace
}  // namespace hearth

int main(int argc, char** argv) { return hearth::Main(argc, argv); }
