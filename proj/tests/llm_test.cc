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

#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "hearth/llm/backend.h"
#include "hearth/llm/factory.h"
#include "hearth/llm/mock_backend.h"
#include "hearth/llm/remote_backend.h"
#include "hearth/profiles/profile.h"
#include "httplib.h"
#include "json.hpp"
#include "test_support.h"

namespace hearth::llm {
namespace {

using ::hearth::testing::Mock;
using ::hearth::testing::StatusIs;
using ::testing::HasSubstr;

double Norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

TEST(MockBackendTest, EchoReturnsUserPrompt) {
  BackendPtr b = Mock({}, "", MockBuiltin::kEcho);
  HEARTH_ASSERT_OK_AND_ASSIGN(ChatExchange ex, b->Chat("sys", "hello there"));
  EXPECT_EQ(ex.reply, "hello there");
  EXPECT_GT(ex.token_estimate, 0);
}

TEST(MockBackendTest, FirstMatchingRuleWinsInDeclarationOrder) {
  BackendPtr b = Mock({{"alpha", "first"}, {"beta", "second"}, {"a", "third"}});
  HEARTH_ASSERT_OK_AND_ASSIGN(ChatExchange ex, b->Chat("", "only beta here"));
  EXPECT_EQ(ex.reply, "second");
  HEARTH_ASSERT_OK_AND_ASSIGN(ex, b->Chat("", "alpha and beta"));
  EXPECT_EQ(ex.reply, "first");
}

TEST(MockBackendTest, CatchAllAndFallback) {
  BackendPtr catch_all = Mock({{".*", "always"}});
  for (const char* p : {"x", "anything at all", "\n"}) {
    HEARTH_ASSERT_OK_AND_ASSIGN(ChatExchange ex, catch_all->Chat("", p));
    EXPECT_EQ(ex.reply, "always");
  }
  BackendPtr fb = Mock({{"^never$", "x"}}, "fallback reply");
  HEARTH_ASSERT_OK_AND_ASSIGN(ChatExchange ex, fb->Chat("", "other"));
  EXPECT_EQ(ex.reply, "fallback reply");
  BackendPtr none = Mock({{"^never$", "x"}});
  EXPECT_THAT(none->Chat("", "other"), StatusIs(absl::StatusCode::kNotFound));
}

TEST(MockBackendTest, TemplatesExpandCaptures) {
  BackendPtr b = Mock({{R"(Command: (\w+) (\w+))", "{{2}}-{{1}} [{{system}}]"}});
  HEARTH_ASSERT_OK_AND_ASSIGN(ChatExchange ex, b->Chat("S", "Command: dim lamp"));
  EXPECT_EQ(ex.reply, "lamp-dim [S]");
}

TEST(MockBackendTest, EmptyScriptIsRejected) {
  EXPECT_THAT(MockRuleEngine(MockScript{}),
              StatusIs(absl::StatusCode::kInvalidArgument));
  HEARTH_ASSERT_OK_AND_ASSIGN(
      MockScript bad,
      MockScriptFromJson(nlohmann::json::parse(R"({"rules": [{"match": "(", "reply": "x"}]})")));
  EXPECT_THAT(MockRuleEngine(bad), StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(MockBackendTest, EmptyReplyIsNeverSuccess) {
  BackendPtr b = Mock({{".*", "   "}});
  EXPECT_FALSE(b->Chat("", "x").ok());
}

TEST(MockBackendTest, PureFunctionOfScriptAndPrompt) {
  BackendPtr a = Mock({{"lamp", "on"}}, "off");
  BackendPtr b = Mock({{"lamp", "on"}}, "off");
  for (const char* p : {"lamp please", "tv", "", "LAMP"}) {
    absl::StatusOr<ChatExchange> x = a->Chat("s", p);
    absl::StatusOr<ChatExchange> y = b->Chat("s", p);
    absl::StatusOr<ChatExchange> z = a->Chat("s", p);
    ASSERT_EQ(x.ok(), y.ok());
    if (x.ok()) {
      EXPECT_EQ(x->reply, y->reply);
      EXPECT_EQ(x->reply, z->reply);
    }
  }
}

TEST(MockBackendTest, EchoCloudAnswersEveryCommand) {
  EXPECT_EQ(EchoCloudReply("### Task: x\nCommand 2: b\nCommand 1: a\n"),
            "Plan for command 2: Handle request: b\n"
            "Plan for command 1: Handle request: a\n");
}

TEST(MockEmbeddingTest, DeterministicAndNormalized) {
  BackendPtr b = Mock({}, "", MockBuiltin::kEcho);
  HEARTH_ASSERT_OK_AND_ASSIGN(EmbeddingVector v1, b->Embed("a"));
  HEARTH_ASSERT_OK_AND_ASSIGN(EmbeddingVector v2, b->Embed("a"));
  EXPECT_EQ(v1, v2);
  EXPECT_EQ(v1.dim(), 256u);
  for (const char* text : {"a", "turn on the lights", "!!!", "x y z x y z"}) {
    HEARTH_ASSERT_OK_AND_ASSIGN(EmbeddingVector v, b->Embed(text));
    EXPECT_NEAR(Norm(v.values), 1.0, 1e-9) << text;
    EXPECT_EQ(v.dim(), 256u);
  }
  EXPECT_THAT(b->Embed("  "), StatusIs(absl::StatusCode::kInvalidArgument));
}

// Oracle: bag-of-token overlap. Sharing three of four tokens must beat
// sharing none.
TEST(MockEmbeddingTest, ParaphraseCloserThanDisjointText) {
  BackendPtr b = Mock({}, "", MockBuiltin::kEcho);
  HEARTH_ASSERT_OK_AND_ASSIGN(EmbeddingVector a, b->Embed("dim bedroom lamp now"));
  HEARTH_ASSERT_OK_AND_ASSIGN(EmbeddingVector p, b->Embed("dim bedroom lamp later"));
  HEARTH_ASSERT_OK_AND_ASSIGN(EmbeddingVector d, b->Embed("open garage door quickly"));
  HEARTH_ASSERT_OK_AND_ASSIGN(double close, profiles::Cosine(a, p));
  HEARTH_ASSERT_OK_AND_ASSIGN(double far, profiles::Cosine(a, d));
  EXPECT_GT(close, far);
}

TEST(CallLogTest, RecordsEveryCall) {
  BackendPtr b = Mock({{"x", "y"}});
  ASSERT_TRUE(b->Chat("", "x").ok());
  ASSERT_FALSE(b->Chat("", "q").ok());
  ASSERT_TRUE(b->Embed("x").ok());
  EXPECT_EQ(b->log().chat_count(), 2u);
  EXPECT_EQ(b->log().embed_count(), 1u);
  std::vector<CallRecord> r = b->log().Snapshot();
  ASSERT_EQ(r.size(), 3u);
  EXPECT_TRUE(r[0].ok);
  EXPECT_FALSE(r[1].ok);
  EXPECT_LT(r[0].sequence, r[1].sequence);
}

TEST(DescriptorTest, Validation) {
  BackendDescriptor d;
  HEARTH_EXPECT_OK(ValidateDescriptor(d));
  d.temperature = -0.1;
  EXPECT_FALSE(ValidateDescriptor(d).ok());
  d.temperature = 0.7;
  d.timeout = std::chrono::milliseconds(0);
  EXPECT_FALSE(ValidateDescriptor(d).ok());
  d.timeout = std::chrono::milliseconds(10);
  d.kind = BackendKind::kRemoteHttp;
  EXPECT_FALSE(ValidateDescriptor(d).ok());
}

TEST(FactoryTest, ReadsDescriptorFields) {
  HEARTH_ASSERT_OK_AND_ASSIGN(
      BackendDescriptor d,
      DescriptorFromJson(nlohmann::json::parse(
                             R"({"kind": "remote-http", "base_url": "http://h:1/v1",
                                 "model": "m", "temperature": 0.7, "timeout_ms": 500,
                                 "max_retries": 2})"),
                         "cloud"));
  EXPECT_EQ(d.kind, BackendKind::kRemoteHttp);
  EXPECT_EQ(d.model_name, "m");
  EXPECT_EQ(d.timeout, std::chrono::milliseconds(500));
  EXPECT_EQ(d.max_retries, 2);
  EXPECT_THAT(DescriptorFromJson(nlohmann::json::parse(R"({"kind": "grpc"})"), "x"),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(MakeBackend(nlohmann::json::parse(R"({"kind": "mock"})"), "x", ""),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ParseBaseUrlTest, SplitsHostAndPrefix) {
  HEARTH_ASSERT_OK_AND_ASSIGN(ParsedUrl u, ParseBaseUrl("http://127.0.0.1:9/v1/"));
  EXPECT_EQ(u.scheme_host_port, "http://127.0.0.1:9");
  EXPECT_EQ(u.path_prefix, "/v1");
  EXPECT_FALSE(ParseBaseUrl("127.0.0.1:9").ok());
  EXPECT_FALSE(ParseBaseUrl("ftp://x").ok());
  EXPECT_FALSE(ParseBaseUrl("http://").ok());
}

// In-test stand-in for an OpenAI-compatible endpoint.
class StubServer {
 public:
  StubServer() {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   const int call = ++chat_calls_;
                   last_auth_ = req.get_header_value("Authorization");
                   last_body_ = req.body;
                   if (call <= fail_first_) {
                     res.status = fail_status_;
                     res.set_content("busy", "text/plain");
                     return;
                   }
                   std::this_thread::sleep_for(std::chrono::milliseconds(2));
                   res.set_content(
                       R"({"choices":[{"message":{"role":"assistant","content":"stub reply"}}]})",
                       "application/json");
                 });
    server_.Post("/v1/embeddings",
                 [](const httplib::Request&, httplib::Response& res) {
                   res.set_content(R"({"data":[{"embedding":[0.6,0.8]}]})",
                                   "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string base_url() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/v1";
  }

  int fail_first_ = 0;
  int fail_status_ = 503;
  std::atomic<int> chat_calls_{0};
  std::string last_auth_;
  std::string last_body_;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

BackendDescriptor RemoteDescriptor(const StubServer& stub) {
  BackendDescriptor d;
  d.name = "stub";
  d.base_url = stub.base_url();
  d.model_name = "stub-model";
  d.timeout = std::chrono::milliseconds(2000);
  d.initial_backoff = std::chrono::milliseconds(5);
  return d;
}

TEST(RemoteBackendTest, ReturnsBodyAndRecordsLatency) {
  StubServer stub;
  setenv("HEARTH_TEST_KEY", "sk-test", 1);
  BackendDescriptor d = RemoteDescriptor(stub);
  d.api_key_env = "HEARTH_TEST_KEY";
  HEARTH_ASSERT_OK_AND_ASSIGN(auto b, RemoteHttpBackend::Create(d));
  HEARTH_ASSERT_OK_AND_ASSIGN(ChatExchange ex, b->Chat("sys", "hi"));
  EXPECT_EQ(ex.reply, "stub reply");
  EXPECT_GT(ex.latency.count(), 0);
  EXPECT_EQ(stub.last_auth_, "Bearer sk-test");
  nlohmann::json sent = nlohmann::json::parse(stub.last_body_);
  EXPECT_EQ(sent["model"], "stub-model");
  EXPECT_EQ(sent["messages"].size(), 2u);
  HEARTH_ASSERT_OK_AND_ASSIGN(EmbeddingVector v, b->Embed("x"));
  EXPECT_EQ(v.values, (std::vector<double>{0.6, 0.8}));
}

TEST(RemoteBackendTest, RetriesTransientStatusWithinBudget) {
  StubServer stub;
  stub.fail_first_ = 2;
  HEARTH_ASSERT_OK_AND_ASSIGN(auto b, RemoteHttpBackend::Create(RemoteDescriptor(stub)));
  HEARTH_ASSERT_OK_AND_ASSIGN(ChatExchange ex, b->Chat("", "hi"));
  EXPECT_EQ(ex.reply, "stub reply");
  EXPECT_EQ(stub.chat_calls_.load(), 3);
}

TEST(RemoteBackendTest, GivesUpAfterMaxRetries) {
  StubServer stub;
  stub.fail_first_ = 100;
  HEARTH_ASSERT_OK_AND_ASSIGN(auto b, RemoteHttpBackend::Create(RemoteDescriptor(stub)));
  absl::StatusOr<ChatExchange> ex = b->Chat("", "hi");
  EXPECT_THAT(ex, StatusIs(absl::StatusCode::kUnavailable));
  EXPECT_EQ(stub.chat_calls_.load(), 3);
}

TEST(RemoteBackendTest, ClientErrorsAreNotRetried) {
  StubServer stub;
  stub.fail_first_ = 100;
  stub.fail_status_ = 400;
  HEARTH_ASSERT_OK_AND_ASSIGN(auto b, RemoteHttpBackend::Create(RemoteDescriptor(stub)));
  absl::StatusOr<ChatExchange> ex = b->Chat("", "hi");
  EXPECT_THAT(ex, StatusIs(absl::StatusCode::kFailedPrecondition));
  EXPECT_THAT(std::string(ex.status().message()), HasSubstr("400"));
  EXPECT_EQ(stub.chat_calls_.load(), 1);
}

TEST(RemoteBackendTest, UnreachableHostIsUnavailable) {
  BackendDescriptor d;
  d.name = "down";
  d.base_url = "http://127.0.0.1:1";
  d.timeout = std::chrono::milliseconds(200);
  d.initial_backoff = std::chrono::milliseconds(1);
  d.max_retries = 2;
  HEARTH_ASSERT_OK_AND_ASSIGN(auto b, RemoteHttpBackend::Create(d));
  EXPECT_FALSE(b->Chat("", "hi").ok());
  EXPECT_EQ(b->log().chat_count(), 1u);
}

}  // namespace
}  // namespace hearth::llm
