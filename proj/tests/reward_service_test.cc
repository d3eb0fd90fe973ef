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

#include "tomscore/reward_service.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "tomscore/error.h"

namespace tomscore {
namespace {

using nlohmann::json;

Scorer MakeScorer(std::size_t workers = 4, std::size_t max_in_flight = 64) {
  HarnessConfig cfg;
  cfg.workers = workers;
  cfg.max_in_flight = max_in_flight;
  return Scorer(MakeToyDataset(), cfg, std::make_shared<DslExtractor>());
}

std::string Perfect(const Scorer& s, const std::string& id) {
  return RenderGroundTruth(*s.Find(id), RenderMode::kAtoms);
}

std::string Request(const std::string& rid, const std::string& ex,
                    const std::vector<std::string>& group) {
  return json{{"request_id", rid}, {"example_id", ex}, {"group", group}}.dump();
}

TEST(ScorerTest, PerfectAndEmptyPair) {
  const Scorer s = MakeScorer();
  const RewardResponse r = s.ScoreGroup({"r1", "supp-b4-1", {Perfect(s, "supp-b4-1"), ""}});
  ASSERT_EQ(r.per_rollout.size(), 2u);
  EXPECT_EQ(r.per_rollout[0].total, 2.0);
  EXPECT_EQ(r.per_rollout[1].total, 0.0);
  EXPECT_EQ(r.advantages, (std::vector{1.0, -1.0}));
}

TEST(ScorerTest, SingleRolloutZeroAdvantage) {
  const Scorer s = MakeScorer();
  const RewardResponse r = s.ScoreGroup({"r", "ig-cook", {Perfect(s, "ig-cook")}});
  EXPECT_EQ(r.per_rollout[0].total, 2.0);
  EXPECT_EQ(r.advantages, std::vector{0.0});
}

TEST(ScorerTest, Errors) {
  const Scorer s = MakeScorer();
  try {
    s.ScoreGroup({"r", "fb-book", {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGroup);
  }
  try {
    s.ScoreGroup({"r", "nope", {"x"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownExample);
  }
}

TEST(ScorerTest, DuplicateTagScoresZero) {
  const Scorer s = MakeScorer();
  const RewardBreakdown b = s.ScoreRollout(*s.Find("fb-book"),
                                           Perfect(s, "fb-book") + "<Action>walk(x)");
  EXPECT_EQ(b.total, 0.0);
  EXPECT_EQ(b.r_format, 0);
  EXPECT_EQ(b.per_layer.size(), 6u);
  ASSERT_EQ(b.diagnostics.size(), 1u);
  EXPECT_EQ(b.diagnostics[0], "DuplicateLayer(Action)");
}

TEST(ScorerTest, UnparsableLayerIsDiagnosed) {
  const Scorer s = MakeScorer();
  std::string trace = Perfect(s, "fb-book");
  trace.replace(trace.find("<Action>"), std::string::npos, "<Action>walk(((");
  const RewardBreakdown b = s.ScoreRollout(*s.Find("fb-book"), trace);
  EXPECT_EQ(b.r_format, 1);
  EXPECT_EQ(b.per_layer.at(LayerKind::kAction), LayerComponents{});
  ASSERT_EQ(b.diagnostics.size(), 1u);
  EXPECT_EQ(b.diagnostics[0].rfind("Action: ", 0), 0u);
  EXPECT_NEAR(b.r_mind, 5.0 / 6, 1e-12);
}

TEST(HandleRequestLineTest, Success) {
  const Scorer s = MakeScorer();
  const json r =
      json::parse(HandleRequestLine(s, Request("abc", "supp-b4-2", {Perfect(s, "supp-b4-2"), ""})));
  EXPECT_EQ(r["request_id"], "abc");
  EXPECT_EQ(r["advantages"], json({1.0, -1.0}));
  const json& b = r["per_rollout"][0];
  EXPECT_EQ(b["total"], 2.0);
  EXPECT_EQ(b["r_format"], 1);
  EXPECT_EQ(b["per_layer"]["Belief"]["r2"], 1.0);
  EXPECT_TRUE(b["diagnostics"].empty());
}

TEST(HandleRequestLineTest, ErrorObjects) {
  const Scorer s = MakeScorer();
  auto code = [&](const std::string& line) {
    const json r = json::parse(HandleRequestLine(s, line));
    return std::make_pair(r["request_id"], r["error"]["code"].get<std::string>());
  };
  EXPECT_EQ(code(Request("a", "fb-book", {})), std::make_pair(json("a"), std::string("EmptyGroup")));
  EXPECT_EQ(code(Request("b", "zzz", {"x"})),
            std::make_pair(json("b"), std::string("UnknownExample")));
  EXPECT_EQ(code(R"({"request_id": "c", "group": ["x"]})"),
            std::make_pair(json("c"), std::string("SchemaError")));
  EXPECT_EQ(code(R"({"request_id": "d", "example_id": "fb-book", "group": [1]})"),
            std::make_pair(json("d"), std::string("SchemaError")));
  EXPECT_EQ(code("not json"), std::make_pair(json(nullptr), std::string("protocol_error")));
  EXPECT_EQ(code("[]"), std::make_pair(json(nullptr), std::string("protocol_error")));
  EXPECT_EQ(code(R"({"request_id": 5})"),
            std::make_pair(json(nullptr), std::string("protocol_error")));
  EXPECT_EQ(code(""), std::make_pair(json(nullptr), std::string("protocol_error")));
}

TEST(ServeConnectionTest, OneResponsePerLineInOrder) {
  const Scorer s = MakeScorer();
  std::string input;
  std::vector<std::string> expected_ids;
  for (int i = 0; i < 60; ++i) {
    const std::string id = "q" + std::to_string(i);
    if (i % 5 == 0) {
      input += "garbage " + id + "\n";
      expected_ids.push_back("");
    } else {
      input += Request(id, i % 2 ? "fb-keys" : "ig-door", {Perfect(s, "fb-keys"), "x"}) + "\n";
      expected_ids.push_back(id);
    }
  }
  std::istringstream in(input);
  std::ostringstream out;
  ScoringPool pool(4);
  StreamLineReader reader(in, 1 << 20);
  StreamLineWriter writer(out);
  ServeConnection(s, pool, reader, writer);

  std::istringstream lines(out.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const json r = json::parse(line);
    if (expected_ids[n].empty()) {
      EXPECT_TRUE(r["request_id"].is_null());
    } else {
      EXPECT_EQ(r["request_id"], expected_ids[n]);
    }
    ++n;
  }
  EXPECT_EQ(n, expected_ids.size());
}

TEST(ServeConnectionTest, OverlongLineIsProtocolError) {
  HarnessConfig cfg;
  cfg.max_line_bytes = 64;
  const Scorer s(MakeToyDataset(), cfg, std::make_shared<DslExtractor>());
  std::istringstream in(std::string(200, 'x') + "\n" + Request("ok", "fb-book", {"a"}) + "\n");
  std::ostringstream out;
  ScoringPool pool(1);
  StreamLineReader reader(in, cfg.max_line_bytes);
  StreamLineWriter writer(out);
  ServeConnection(s, pool, reader, writer);
  std::istringstream lines(out.str());
  std::string first, second;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_EQ(json::parse(first)["error"]["code"], "protocol_error");
  EXPECT_EQ(json::parse(second)["request_id"], "ok");
}

// Counts how far reading runs ahead of writing.
struct Gauge {
  std::atomic<int> read{0};
  std::atomic<int> written{0};
  std::atomic<int> max_ahead{0};
};

class CountingReader : public LineReader {
 public:
  CountingReader(std::vector<std::string> lines, Gauge& g) : lines_(std::move(lines)), g_(g) {}
  std::optional<std::string> ReadLine(bool& overflow) override {
    overflow = false;
    if (next_ == lines_.size()) return std::nullopt;
    const int ahead = ++g_.read - g_.written;
    int prev = g_.max_ahead;
    while (ahead > prev && !g_.max_ahead.compare_exchange_weak(prev, ahead)) {
    }
    return lines_[next_++];
  }

 private:
  std::vector<std::string> lines_;
  std::size_t next_ = 0;
  Gauge& g_;
};

class SlowWriter : public LineWriter {
 public:
  explicit SlowWriter(Gauge& g) : g_(g) {}
  bool WriteLine(std::string_view) override {
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
    ++g_.written;
    return true;
  }

 private:
  Gauge& g_;
};

TEST(ServeConnectionTest, BoundsInFlightRequests) {
  const Scorer s = MakeScorer(2, 4);
  Gauge g;
  CountingReader reader(std::vector<std::string>(50, Request("x", "fb-book", {"a"})), g);
  SlowWriter writer(g);
  ScoringPool pool(2);
  ServeConnection(s, pool, reader, writer);
  EXPECT_EQ(g.written, 50);
  EXPECT_LE(g.max_ahead, 4);
}

class FailingWriter : public LineWriter {
 public:
  bool WriteLine(std::string_view) override { return ++calls_ < 3; }
  int calls_ = 0;
};

TEST(ServeConnectionTest, StopsWhenPeerGoes) {
  const Scorer s = MakeScorer(2, 2);
  Gauge g;
  CountingReader reader(std::vector<std::string>(1000, Request("x", "fb-book", {"a"})), g);
  FailingWriter writer;
  ScoringPool pool(2);
  ServeConnection(s, pool, reader, writer);
  EXPECT_LT(g.read, 1000);
}

TEST(DeterminismTest, ByteIdenticalAcrossWorkerCounts) {
  std::string input;
  for (int i = 0; i < 30; ++i) {
    input += Request("r" + std::to_string(i), "supp-b4-1",
                     {"<Action>walk(fridge), open(fridge)", "<Perception>walk(robot, x)",
                      "<Belief>know(alice, x)<Action>pick(apple)"}) +
             "\n";
  }
  std::string baseline;
  for (std::size_t workers : {1u, 3u, 8u}) {
    const Scorer s = MakeScorer(workers);
    std::istringstream in(input);
    std::ostringstream out;
    ScoringPool pool(workers);
    StreamLineReader reader(in, 1 << 20);
    StreamLineWriter writer(out);
    ServeConnection(s, pool, reader, writer);
    if (baseline.empty()) baseline = out.str();
    EXPECT_EQ(out.str(), baseline);
  }
}

TEST(TransportTest, Parse) {
  EXPECT_TRUE(Transport::Parse("stdio").stdio);
  const Transport t = Transport::Parse("127.0.0.1:7000");
  EXPECT_FALSE(t.stdio);
  EXPECT_EQ(t.host, "127.0.0.1");
  EXPECT_EQ(t.port, 7000);
  EXPECT_EQ(Transport::Parse("[::1]:80").host, "::1");
  EXPECT_EQ(Transport::Parse(":0").host, "");
  EXPECT_THROW(Transport::Parse("localhost"), Error);
  EXPECT_THROW(Transport::Parse("h:99999"), Error);
  EXPECT_THROW(Transport::Parse("h:x"), Error);
}

int Connect(std::uint16_t port) {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    return -1;
  }
  return fd;
}

TEST(TcpServerTest, ServesConcurrentClients) {
  const Scorer s = MakeScorer();
  TcpServer server(s, "127.0.0.1", 0);
  ASSERT_NE(server.port(), 0);
  std::thread run([&] { server.Run(); });

  constexpr int kClients = 4;
  constexpr int kPerClient = 10;
  std::vector<std::thread> clients;
  std::vector<std::vector<std::string>> got(kClients);
  for (int c = 0; c < kClients; ++c) {
    clients.emplace_back([&, c] {
      const int fd = Connect(server.port());
      ASSERT_GE(fd, 0);
      std::string out;
      for (int i = 0; i < kPerClient; ++i) {
        out += Request("c" + std::to_string(c) + "-" + std::to_string(i), "fb-milk",
                       {Perfect(s, "fb-milk"), ""}) +
               "\n";
      }
      ASSERT_EQ(::send(fd, out.data(), out.size(), MSG_NOSIGNAL),
                static_cast<ssize_t>(out.size()));
      ::shutdown(fd, SHUT_WR);
      FdLineReader reader(fd, 1 << 20);
      bool overflow = false;
      while (auto line = reader.ReadLine(overflow)) {
        got[c].push_back(json::parse(*line)["request_id"].get<std::string>());
      }
      ::close(fd);
    });
  }
  for (auto& t : clients) t.join();
  server.Stop();
  run.join();

  for (int c = 0; c < kClients; ++c) {
    ASSERT_EQ(got[c].size(), static_cast<std::size_t>(kPerClient));
    for (int i = 0; i < kPerClient; ++i) {
      EXPECT_EQ(got[c][i], "c" + std::to_string(c) + "-" + std::to_string(i));
    }
  }
}

TEST(TcpServerTest, StopReleasesIdleConnections) {
  const Scorer s = MakeScorer();
  TcpServer server(s, "127.0.0.1", 0);
  std::thread run([&] { server.Run(); });
  const int fd = Connect(server.port());
  ASSERT_GE(fd, 0);
  const std::string req = Request("idle", "fb-book", {"x"}) + "\n";
  ::send(fd, req.data(), req.size(), MSG_NOSIGNAL);
  FdLineReader reader(fd, 1 << 20);
  bool overflow = false;
  const auto line = reader.ReadLine(overflow);
  ASSERT_TRUE(line.has_value());
  EXPECT_EQ(json::parse(*line)["request_id"], "idle");
  server.Stop();
  run.join();  // Must not hang on the open client.
  ::close(fd);
}

TEST(FdLineReaderTest, SplitsAndLimits) {
  int fds[2];
  ASSERT_EQ(::pipe(fds), 0);
  const std::string data = "a\r\nbb\n" + std::string(20, 'z') + "\nlast";
  ASSERT_EQ(::write(fds[1], data.data(), data.size()), static_cast<ssize_t>(data.size()));
  ::close(fds[1]);
  FdLineReader reader(fds[0], 8);
  bool overflow = false;
  EXPECT_EQ(reader.ReadLine(overflow), "a");
  EXPECT_EQ(reader.ReadLine(overflow), "bb");
  EXPECT_FALSE(overflow);
  EXPECT_EQ(reader.ReadLine(overflow)->size(), 8u);
  EXPECT_TRUE(overflow);
  EXPECT_EQ(reader.ReadLine(overflow), "last");
  EXPECT_FALSE(overflow);
  EXPECT_FALSE(reader.ReadLine(overflow).has_value());
  ::close(fds[0]);
}

}  // namespace
}  // namespace tomscore
