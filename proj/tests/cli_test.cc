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

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "hearth/core/serialize.h"
#include "test_support.h"

namespace hearth {
namespace {

using ::hearth::testing::CliPath;
using ::hearth::testing::DataPath;
using ::hearth::testing::TempDir;
using ::testing::HasSubstr;

struct CliRun {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout and stderr together.
CliRun Cli(const std::string& args) {
  CliRun r;
  const std::string cmd = CliPath() + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

TEST(CliTest, HelpExitsZero) {
  const CliRun r = Cli("--help");
  EXPECT_EQ(r.exit_code, 0);
  for (const char* sub : {"serve", "forge", "bench", "profiles", "session"}) {
    EXPECT_THAT(r.out, HasSubstr(sub));
  }
}

TEST(CliTest, UsageErrorsExitTwoWithJson) {
  const CliRun r = Cli("session run --bogus");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_THAT(r.out, HasSubstr("\"code\":\"usage\""));
  EXPECT_EQ(Cli("").exit_code, 2);
}

TEST(CliTest, RuntimeErrorsExitOne) {
  const CliRun r = Cli("forge export --labels /nonexistent/labels.json");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_THAT(r.out, HasSubstr("\"error\""));
}

TEST(CliTest, GoldenSessionRun) {
  TempDir dir;
  const CliRun r = Cli("session run --config " + DataPath("config.golden.json") +
                    " --script " + DataPath("sessions/golden.json") +
                    " --data-dir " + dir.path());
  ASSERT_EQ(r.exit_code, 0) << r.out;
  absl::StatusOr<Json> j = ParseJson(r.out);
  ASSERT_TRUE(j.ok()) << r.out;
  EXPECT_EQ((*j)["steps"], 15);
  const std::string hash = (*j)["transcript_hash"];
  EXPECT_EQ(hash.size(), 64u);

  TempDir again;
  const CliRun check = Cli("session run --config " + DataPath("config.golden.json") +
                        " --script " + DataPath("sessions/golden.json") +
                        " --data-dir " + again.path() + " --expect-hash " + hash);
  EXPECT_EQ(check.exit_code, 0) << check.out;
  TempDir third;
  const CliRun mismatch =
      Cli("session run --config " + DataPath("config.golden.json") + " --script " +
          DataPath("sessions/golden.json") + " --data-dir " + third.path() +
          " --expect-hash 00");
  EXPECT_EQ(mismatch.exit_code, 1);
}

TEST(CliTest, ForgePipeline) {
  TempDir dir;
  const std::string backend = DataPath("mock/local_backend.json");
  CliRun r = Cli("forge synth --seeds " + DataPath("seeds.json") + " --backend " +
              backend + " --iterations 10 --out " + dir.File("pool.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  r = Cli("forge label --pool " + dir.File("pool.json") + " --backend " + backend +
          " --out " + dir.File("labels.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  r = Cli("forge export --labels " + dir.File("labels.json") + " --out " +
          dir.File("train.jsonl"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  absl::StatusOr<std::string> jsonl = ReadFile(dir.File("train.jsonl"));
  ASSERT_TRUE(jsonl.ok());
  EXPECT_THAT(*jsonl, HasSubstr("\"instruction\""));
}

TEST(CliTest, BenchAttackPrintsJson) {
  const CliRun r = Cli("bench attack --corpus " + DataPath("corpus.json") +
                    " --n 4 --rounds 200 --seed 3");
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_THAT(r.out, HasSubstr("\"sr\""));
}

}  // namespace
}  // namespace hearth
