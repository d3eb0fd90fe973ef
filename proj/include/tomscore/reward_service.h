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

#ifndef TOMSCORE_REWARD_SERVICE_H_
#define TOMSCORE_REWARD_SERVICE_H_

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "tomscore/config.h"
#include "tomscore/dataset_io.h"
#include "tomscore/extractor.h"
#include "tomscore/hierarchy_parser.h"
#include "tomscore/reward_engine.h"

namespace tomscore {

struct RewardRequest {
  std::string request_id;
  std::string example_id;
  std::vector<std::string> group;  // G rollouts.
};

struct RewardResponse {
  std::string request_id;
  std::vector<RewardBreakdown> per_rollout;
  std::vector<double> advantages;
};

// Scores rollouts against an immutable dataset index. Thread-safe.
class Scorer {
 public:
  Scorer(std::vector<DatasetExample> dataset, HarnessConfig config,
         std::shared_ptr<const Extractor> extractor);

  const DatasetExample* Find(std::string_view example_id) const;
  const HarnessConfig& config() const { return config_; }
  const Extractor& extractor() const { return *extractor_; }
  const std::vector<DatasetExample>& dataset() const { return dataset_; }

  // Ground-truth atomic sequences for all six layers.
  const LayerSequences& Reference(const DatasetExample& example) const;

  // Extracts atoms from every layer found in `trace`. Layers that fail to
  // extract are omitted and described in `diagnostics`.
  LayerSequences ExtractLayers(const DatasetExample& example,
                               const ReasoningTrace& trace,
                               std::vector<std::string>& diagnostics) const;

  // parse -> extract -> mind reward + format reward. A trace with a repeated
  // tag scores zero with a DuplicateLayer diagnostic.
  RewardBreakdown ScoreRollout(const DatasetExample& example,
                               std::string_view raw) const;

  // Throws Error(kUnknownExample) or Error(kEmptyGroup).
  RewardResponse ScoreGroup(const RewardRequest& request) const;

 private:
  std::vector<DatasetExample> dataset_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<LayerSequences> references_;
  HarnessConfig config_;
  std::shared_ptr<const Extractor> extractor_;
};

nlohmann::ordered_json BreakdownToJson(const RewardBreakdown& breakdown);
nlohmann::ordered_json ResponseToJson(const RewardResponse& response);

// Handles one protocol line and returns one response line (no trailing
// newline). Never throws: malformed input yields an error object.
std::string HandleRequestLine(const Scorer& scorer, std::string_view line);

class LineReader {
 public:
  virtual ~LineReader() = default;
  // nullopt at end of input. Lines longer than the reader's limit are
  // returned truncated with `overflow` set.
  virtual std::optional<std::string> ReadLine(bool& overflow) = 0;
};

class LineWriter {
 public:
  virtual ~LineWriter() = default;
  // Writes `line` plus '\n' and flushes. Returns false when the peer is gone.
  virtual bool WriteLine(std::string_view line) = 0;
};

class StreamLineReader : public LineReader {
 public:
  StreamLineReader(std::istream& in, std::size_t max_line_bytes);
  std::optional<std::string> ReadLine(bool& overflow) override;

 private:
  std::istream& in_;
  std::size_t max_line_bytes_;
};

class StreamLineWriter : public LineWriter {
 public:
  explicit StreamLineWriter(std::ostream& out) : out_(out) {}
  bool WriteLine(std::string_view line) override;

 private:
  std::ostream& out_;
};

class FdLineReader : public LineReader {
 public:
  FdLineReader(int fd, std::size_t max_line_bytes);
  std::optional<std::string> ReadLine(bool& overflow) override;

 private:
  int fd_;
  std::size_t max_line_bytes_;
  std::string buffer_;
  bool eof_ = false;
};

class FdLineWriter : public LineWriter {
 public:
  explicit FdLineWriter(int fd) : fd_(fd) {}
  bool WriteLine(std::string_view line) override;

 private:
  int fd_;
};

// Worker pool shared by all connections of a service.
class ScoringPool {
 public:
  explicit ScoringPool(std::size_t workers);
  ~ScoringPool();
  ScoringPool(const ScoringPool&) = delete;
  ScoringPool& operator=(const ScoringPool&) = delete;

  struct Impl;
  Impl& impl() { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

// Serves one connection: every input line yields exactly one output line, in
// arrival order. At most `config.max_in_flight` requests are queued or being
// scored; the reader blocks beyond that. Returns after end of input once all
// responses are written.
void ServeConnection(const Scorer& scorer, ScoringPool& pool, LineReader& reader,
                     LineWriter& writer);

// Newline-delimited JSON over TCP. Each connection is served by its own
// thread; at most `max_connections` are served at once.
class TcpServer {
 public:
  // `host` may be empty for all interfaces; port 0 picks a free port.
  TcpServer(const Scorer& scorer, std::string host, std::uint16_t port);
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const { return port_; }
  // Blocks until Stop() is called.
  void Run();
  // Stops accepting and half-closes open connections; requests already read
  // are answered before Run returns.
  void Stop();

 private:
  void ServeClient(int fd);

  const Scorer& scorer_;
  ScoringPool pool_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};

  std::mutex mu_;
  std::condition_variable slot_freed_;
  std::size_t active_ = 0;
  std::set<int> open_fds_;
  std::vector<std::thread> clients_;
};

// "stdio" or "host:port".
struct Transport {
  bool stdio = true;
  std::string host;
  std::uint16_t port = 0;

  static Transport Parse(std::string_view spec);
};

}  // namespace tomscore

#endif  // TOMSCORE_REWARD_SERVICE_H_
