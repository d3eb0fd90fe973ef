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

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <deque>
#include <future>
#include <istream>
#include <ostream>

#include <boost/asio/post.hpp>
#include <boost/asio/thread_pool.hpp>
#include <fmt/core.h>

#include "tomscore/error.h"
#include "tomscore/hierarchy_parser.h"

namespace tomscore {
namespace {

using nlohmann::ordered_json;

std::string ErrorLine(const ordered_json& request_id, std::string_view code,
                      std::string_view message) {
  ordered_json doc;
  doc["request_id"] = request_id;
  doc["error"] = {{"code", code}, {"message", message}};
  return doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string ProtocolError(std::string_view message) {
  return ErrorLine(nullptr, "protocol_error", message);
}

}  // namespace

Scorer::Scorer(std::vector<DatasetExample> dataset, HarnessConfig config,
               std::shared_ptr<const Extractor> extractor)
    : dataset_(std::move(dataset)),
      config_(std::move(config)),
      extractor_(std::move(extractor)) {
  references_.reserve(dataset_.size());
  for (std::size_t i = 0; i < dataset_.size(); ++i) {
    index_.emplace(dataset_[i].id, i);
    LayerSequences ref;
    for (LayerKind kind : kAllLayers) ref[kind] = dataset_[i].layer(kind).sequence;
    references_.push_back(std::move(ref));
  }
}

const DatasetExample* Scorer::Find(std::string_view example_id) const {
  auto it = index_.find(example_id);
  return it == index_.end() ? nullptr : &dataset_[it->second];
}

const LayerSequences& Scorer::Reference(const DatasetExample& example) const {
  return references_[index_.find(example.id)->second];
}

LayerSequences Scorer::ExtractLayers(const DatasetExample& example,
                                     const ReasoningTrace& trace,
                                     std::vector<std::string>& diagnostics) const {
  const ParseOptions options = example.parse_options(config_.aliases);
  LayerSequences gen;
  for (const TraceLayer& layer : trace.layers) {
    try {
      gen[layer.kind] = extractor_->Extract(layer.text, layer.kind, options);
    } catch (const std::exception& e) {
      diagnostics.push_back(fmt::format("{}: {}", LayerName(layer.kind), e.what()));
    }
  }
  return gen;
}

RewardBreakdown Scorer::ScoreRollout(const DatasetExample& example,
                                     std::string_view raw) const {
  const LayerSequences& ref = Reference(example);
  ReasoningTrace trace;
  try {
    trace = ParseTrace(raw);
  } catch (const DuplicateLayerError& e) {
    RewardBreakdown zero = MindReward({}, ref, config_.reward);
    zero.diagnostics.push_back(e.what());
    TotalReward(zero, 0);
    return zero;
  }
  std::vector<std::string> diagnostics;
  const LayerSequences gen = ExtractLayers(example, trace, diagnostics);
  RewardBreakdown out = MindReward(gen, ref, config_.reward);
  out.diagnostics = std::move(diagnostics);
  TotalReward(out, FormatReward(trace));
  return out;
}

RewardResponse Scorer::ScoreGroup(const RewardRequest& request) const {
  if (request.group.empty()) throw Error(ErrorCode::kEmptyGroup, "EmptyGroup");
  const DatasetExample* example = Find(request.example_id);
  if (example == nullptr) {
    throw Error(ErrorCode::kUnknownExample,
                fmt::format("unknown example_id '{}'", request.example_id));
  }
  RewardResponse response;
  response.request_id = request.request_id;
  std::vector<double> totals;
  for (const std::string& rollout : request.group) {
    response.per_rollout.push_back(ScoreRollout(*example, rollout));
    totals.push_back(response.per_rollout.back().total);
  }
  response.advantages = GroupAdvantages(totals, config_.grpo);
  return response;
}

ordered_json BreakdownToJson(const RewardBreakdown& b) {
  ordered_json per_layer = ordered_json::object();
  for (const auto& [kind, c] : b.per_layer) {
    per_layer[std::string(LayerName(kind))] = {{"r1", c.r1}, {"r2", c.r2}, {"rl", c.rl}};
  }
  ordered_json doc;
  doc["per_layer"] = std::move(per_layer);
  doc["r_atomic"] = b.r_atomic;
  doc["r_local"] = b.r_local;
  doc["r_global"] = b.r_global;
  doc["r_mind"] = b.r_mind;
  doc["r_format"] = b.r_format;
  doc["total"] = b.total;
  doc["diagnostics"] = b.diagnostics;
  return doc;
}

ordered_json ResponseToJson(const RewardResponse& response) {
  ordered_json doc;
  doc["request_id"] = response.request_id;
  doc["per_rollout"] = ordered_json::array();
  for (const RewardBreakdown& b : response.per_rollout) {
    doc["per_rollout"].push_back(BreakdownToJson(b));
  }
  doc["advantages"] = response.advantages;
  return doc;
}

std::string HandleRequestLine(const Scorer& scorer, std::string_view line) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    return ProtocolError(fmt::format("invalid JSON: {}", e.what()));
  }
  if (!doc.is_object()) return ProtocolError("request must be a JSON object");
  auto id_it = doc.find("request_id");
  if (id_it == doc.end() || !id_it->is_string()) {
    return ProtocolError("request_id must be a string");
  }
  const ordered_json request_id = id_it->get<std::string>();

  try {
    RewardRequest request;
    request.request_id = id_it->get<std::string>();
    auto ex_it = doc.find("example_id");
    if (ex_it == doc.end() || !ex_it->is_string()) {
      return ErrorLine(request_id, "SchemaError", "example_id must be a string");
    }
    request.example_id = ex_it->get<std::string>();
    auto group_it = doc.find("group");
    if (group_it == doc.end() || !group_it->is_array()) {
      return ErrorLine(request_id, "SchemaError", "group must be an array of strings");
    }
    for (const auto& rollout : *group_it) {
      if (!rollout.is_string()) {
        return ErrorLine(request_id, "SchemaError", "group must be an array of strings");
      }
      request.group.push_back(rollout.get<std::string>());
    }
    return ResponseToJson(scorer.ScoreGroup(request))
        .dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  } catch (const Error& e) {
    return ErrorLine(request_id, ErrorCodeName(e.code()), e.what());
  } catch (const std::exception& e) {
    return ErrorLine(request_id, "InternalError", e.what());
  }
}

StreamLineReader::StreamLineReader(std::istream& in, std::size_t max_line_bytes)
    : in_(in), max_line_bytes_(max_line_bytes) {}

std::optional<std::string> StreamLineReader::ReadLine(bool& overflow) {
  overflow = false;
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() > max_line_bytes_) {
    line.resize(max_line_bytes_);
    overflow = true;
  }
  return line;
}

bool StreamLineWriter::WriteLine(std::string_view line) {
  out_ << line << '\n';
  out_.flush();
  return static_cast<bool>(out_);
}

FdLineReader::FdLineReader(int fd, std::size_t max_line_bytes)
    : fd_(fd), max_line_bytes_(max_line_bytes) {}

std::optional<std::string> FdLineReader::ReadLine(bool& overflow) {
  overflow = false;
  bool discarding = false;  // Past max_line_bytes; drop until newline.
  std::string line;
  while (true) {
    const auto nl = buffer_.find('\n');
    if (!discarding) {
      line.append(buffer_, 0, nl);
      if (line.size() > max_line_bytes_) {
        line.resize(max_line_bytes_);
        overflow = true;
        discarding = true;
      }
    }
    if (nl != std::string::npos) {
      buffer_.erase(0, nl + 1);
      break;
    }
    buffer_.clear();
    if (eof_) {
      if (line.empty() && !overflow) return std::nullopt;
      break;
    }
    char chunk[8192];
    const ssize_t n = ::read(fd_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      eof_ = true;
      continue;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool FdLineWriter::WriteLine(std::string_view line) {
  std::string data(line);
  data += '\n';
  std::size_t written = 0;
  while (written < data.size()) {
    ssize_t n = ::send(fd_, data.data() + written, data.size() - written, MSG_NOSIGNAL);
    if (n < 0 && errno == ENOTSOCK) {
      n = ::write(fd_, data.data() + written, data.size() - written);
    }
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    written += static_cast<std::size_t>(n);
  }
  return true;
}

struct ScoringPool::Impl {
  explicit Impl(std::size_t workers) : pool(workers) {}
  boost::asio::thread_pool pool;
};

ScoringPool::ScoringPool(std::size_t workers)
    : impl_(std::make_unique<Impl>(workers == 0 ? 1 : workers)) {}

ScoringPool::~ScoringPool() { impl_->pool.join(); }

void ServeConnection(const Scorer& scorer, ScoringPool& pool, LineReader& reader,
                     LineWriter& writer) {
  const std::size_t limit = scorer.config().max_in_flight;
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::future<std::string>> queue;
  std::size_t in_flight = 0;
  bool reader_done = false;
  bool peer_gone = false;

  std::thread writer_thread([&] {
    while (true) {
      std::future<std::string> next;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return !queue.empty() || reader_done; });
        if (queue.empty()) return;
        next = std::move(queue.front());
        queue.pop_front();
      }
      const std::string line = next.get();
      const bool ok = writer.WriteLine(line);
      {
        std::lock_guard lock(mu);
        --in_flight;
        if (!ok) peer_gone = true;
      }
      cv.notify_all();
    }
  });

  while (true) {
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return in_flight < limit || peer_gone; });
      if (peer_gone) break;
    }
    bool overflow = false;
    std::optional<std::string> line = reader.ReadLine(overflow);
    if (!line) break;

    std::future<std::string> result;
    if (overflow) {
      std::promise<std::string> p;
      p.set_value(ProtocolError("request line exceeds max_line_bytes"));
      result = p.get_future();
    } else {
      auto task = std::make_shared<std::packaged_task<std::string()>>(
          [&scorer, request = std::move(*line)] {
            return HandleRequestLine(scorer, request);
          });
      result = task->get_future();
      boost::asio::post(pool.impl().pool, [task] { (*task)(); });
    }
    {
      std::lock_guard lock(mu);
      queue.push_back(std::move(result));
      ++in_flight;
    }
    cv.notify_all();
  }
  {
    std::lock_guard lock(mu);
    reader_done = true;
  }
  cv.notify_all();
  writer_thread.join();
}

TcpServer::TcpServer(const Scorer& scorer, std::string host, std::uint16_t port)
    : scorer_(scorer), pool_(scorer.config().workers) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string service = std::to_string(port);
  const int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(),
                               &hints, &res);
  if (rc != 0) {
    throw Error(ErrorCode::kIoError,
                fmt::format("cannot resolve '{}': {}", host, ::gai_strerror(rc)));
  }
  std::string last_error = "no addresses";
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
      listen_fd_ = fd;
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (listen_fd_ < 0) {
    throw Error(ErrorCode::kIoError,
                fmt::format("cannot listen on {}:{}: {}", host, port, last_error));
  }
  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  if (bound.ss_family == AF_INET) {
    port_ = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  } else {
    port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
  }
}

TcpServer::~TcpServer() {
  Stop();
  for (std::thread& t : clients_) {
    if (t.joinable()) t.join();
  }
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::ServeClient(int fd) {
  FdLineReader reader(fd, scorer_.config().max_line_bytes);
  FdLineWriter writer(fd);
  ServeConnection(scorer_, pool_, reader, writer);
  {
    std::lock_guard lock(mu_);
    open_fds_.erase(fd);
    --active_;
  }
  ::close(fd);
  slot_freed_.notify_all();
}

void TcpServer::Run() {
  while (!stopping_) {
    {
      std::unique_lock lock(mu_);
      slot_freed_.wait(lock, [&] {
        return active_ < scorer_.config().max_connections || stopping_;
      });
    }
    if (stopping_) break;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR || errno == ECONNABORTED) continue;
      break;
    }
    {
      std::lock_guard lock(mu_);
      if (stopping_) {
        ::close(fd);
        break;
      }
      ++active_;
      open_fds_.insert(fd);
    }
    clients_.emplace_back([this, fd] { ServeClient(fd); });
  }
  for (std::thread& t : clients_) {
    if (t.joinable()) t.join();
  }
  clients_.clear();
}

void TcpServer::Stop() {
  std::lock_guard lock(mu_);
  if (stopping_.exchange(true)) return;
  if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
  for (int fd : open_fds_) ::shutdown(fd, SHUT_RD);
  slot_freed_.notify_all();
}

Transport Transport::Parse(std::string_view spec) {
  Transport t;
  if (spec == "stdio") return t;
  const auto colon = spec.rfind(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("transport '{}' is neither 'stdio' nor host:port", spec));
  }
  const std::string_view port = spec.substr(colon + 1);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || value > 65535) {
    throw Error(ErrorCode::kConfigError, fmt::format("bad port in '{}'", spec));
  }
  t.stdio = false;
  t.host = std::string(spec.substr(0, colon));
  if (t.host.size() >= 2 && t.host.front() == '[' && t.host.back() == ']') {
    t.host = t.host.substr(1, t.host.size() - 2);
  }
  t.port = static_cast<std::uint16_t>(value);
  return t;
}

}  // namespace tomscore
