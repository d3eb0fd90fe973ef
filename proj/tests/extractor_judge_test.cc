// Copyright 2026 The tomscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "tomscore/error.h"
#include "tomscore/extractor.h"
#include "tomscore/hierarchy_parser.h"
#include "tomscore/http_client.h"
#include "tomscore/judge.h"

namespace tomscore {
namespace {

// Replays canned replies; an empty reply simulates a transport failure.
class MockChat : public ChatClient {
 public:
  explicit MockChat(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string Complete(const std::string& prompt) const override {
    last_prompt_ = prompt;
    const std::size_t i = calls_++;
    const std::string& r = replies_[std::min(i, replies_.size() - 1)];
    if (r.empty()) throw Error(ErrorCode::kIoError, "connection refused");
    return r;
  }
  std::size_t calls() const { return calls_; }
  const std::string& last_prompt() const { return last_prompt_; }

 private:
  std::vector<std::string> replies_;
  mutable std::size_t calls_ = 0;
  mutable std::string last_prompt_;
};

RetryPolicy NoSleep(std::vector<std::chrono::milliseconds>* sleeps = nullptr) {
  RetryPolicy p;
  p.sleep = [sleeps](std::chrono::milliseconds d) {
    if (sleeps) sleeps->push_back(d);
  };
  return p;
}

const ReasoningTrace kTrace = ParseTrace("<Perception>p<Belief>b<Action>walk(x)");

TEST(JudgeTest, ParsesScore) {
  MockChat judge({"7"});
  EXPECT_EQ(JudgeBpc(kTrace, judge, NoSleep()), 7.0);
  EXPECT_NE(judge.last_prompt().find("<Belief> b"), std::string::npos);
  EXPECT_EQ(ParseJudgeScore("Score: 8.5/10"), 8.5);
  EXPECT_EQ(ParseJudgeScore("10"), 10.0);
  EXPECT_EQ(ParseJudgeScore("0"), 0.0);
}

TEST(JudgeTest, MalformedReply) {
  MockChat judge({"excellent"});
  try {
    JudgeBpc(kTrace, judge, NoSleep());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJudgeMalformedReply);
    EXPECT_NE(std::string(e.what()).find("excellent"), std::string::npos);
  }
  EXPECT_EQ(judge.calls(), 1u);
  EXPECT_THROW(ParseJudgeScore("11"), Error);
}

TEST(JudgeTest, RetriesWithBackoff) {
  std::vector<std::chrono::milliseconds> sleeps;
  MockChat flaky({"", "", "6"});
  EXPECT_EQ(JudgeBpc(kTrace, flaky, NoSleep(&sleeps)), 6.0);
  EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(500),
                                                             std::chrono::milliseconds(1000)}));

  MockChat down({""});
  try {
    JudgeBpc(kTrace, down, NoSleep());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kJudgeUnavailable);
  }
  EXPECT_EQ(down.calls(), 3u);
}

TEST(ExtractorTest, DslIsDeterministic) {
  DslExtractor dsl;
  const auto a = dsl.Extract("walk(a), open(b)", LayerKind::kAction, {});
  EXPECT_EQ(a, dsl.Extract("walk(a), open(b)", LayerKind::kAction, {}));
  EXPECT_EQ(a.items.size(), 2u);
}

TEST(ExtractorTest, RemoteParsesFencedReply) {
  auto chat = std::make_shared<MockChat>(
      std::vector<std::string>{"```\nattribute_belief(Alice, searching(apple))\n```"});
  RemoteLlmExtractor llm(chat);
  ParseOptions opts;
  const auto seq = llm.Extract("Alice looks for her apple.", LayerKind::kBelief, opts);
  ASSERT_EQ(seq.items.size(), 1u);
  EXPECT_EQ(std::get<MentalPredicate>(seq.items[0]).agent, Perspective::Human("alice"));
  EXPECT_NE(chat->last_prompt().find("attribute_belief"), std::string::npos);
  EXPECT_NE(chat->last_prompt().find("Alice looks for her apple."), std::string::npos);
}

TEST(ExtractorTest, RemoteFailureIsUnavailable) {
  RemoteLlmExtractor llm(std::make_shared<MockChat>(std::vector<std::string>{""}));
  try {
    llm.Extract("x", LayerKind::kAction, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kExtractorUnavailable);
  }
}

TEST(ExtractorTest, PromptListsVerbsForPhysicalLayers) {
  const std::string p = AtomicExtractionPrompt(LayerKind::kAction, "open the fridge");
  EXPECT_NE(p.find("switchoff"), std::string::npos);
  EXPECT_NE(p.find("<Action>"), std::string::npos);
  EXPECT_EQ(AtomicExtractionPrompt(LayerKind::kDesire, "x").find("switchoff"), std::string::npos);
}

TEST(StripCodeFenceTest, Cases) {
  EXPECT_EQ(StripCodeFence("  walk(a) \n"), "walk(a)");
  EXPECT_EQ(StripCodeFence("```dsl\nwalk(a)\n```"), "walk(a)");
  EXPECT_EQ(StripCodeFence("```"), "");
}

TEST(HttpClientTest, SplitUrl) {
  const HttpTarget t = SplitUrl("http://localhost:8080/v1/chat/completions");
  EXPECT_EQ(t.origin, "http://localhost:8080");
  EXPECT_EQ(t.path, "/v1/chat/completions");
  EXPECT_EQ(SplitUrl("https://example.com").path, "/");
  EXPECT_THROW(SplitUrl("localhost:8080/x"), Error);
}

TEST(HttpChatClientTest, TalksToChatCompletionsServer) {
  httplib::Server server;
  std::string seen_auth;
  std::string seen_model;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    const auto body = nlohmann::json::parse(req.body);
    seen_model = body["model"];
    const std::string content = "echo:" + body["messages"][0]["content"].get<std::string>();
    res.set_content(
        nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}
            .dump(),
        "application/json");
  });
  server.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("{}", "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string base = "http://127.0.0.1:" + std::to_string(port);

  HttpChatClient client(base + "/v1/chat/completions", "secret", "m1");
  EXPECT_EQ(client.Complete("hi"), "echo:hi");
  EXPECT_EQ(seen_auth, "Bearer secret");
  EXPECT_EQ(seen_model, "m1");
  EXPECT_THROW(HttpChatClient(base + "/broken", "", "m").Complete("x"), Error);
  EXPECT_THROW(HttpChatClient(base + "/missing", "", "m").Complete("x"), Error);

  server.stop();
  t.join();
  try {
    client.Complete("after stop");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(HttpChatClientTest, FromEnvironment) {
  ::unsetenv("TOMSCORE_TEST_ENDPOINT");
  EXPECT_EQ(HttpChatClient::FromEnvironment("TOMSCORE_TEST", "m"), nullptr);
  ::setenv("TOMSCORE_TEST_ENDPOINT", "http://127.0.0.1:9/x", 1);
  EXPECT_NE(HttpChatClient::FromEnvironment("TOMSCORE_TEST", "m"), nullptr);
  ::unsetenv("TOMSCORE_TEST_ENDPOINT");
}

}  // namespace
}  // namespace tomscore
