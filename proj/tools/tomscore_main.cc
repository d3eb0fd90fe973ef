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

// Command line front end: evaluate, reward, toy-dataset, validate.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "tomscore/config.h"
#include "tomscore/dataset_io.h"
#include "tomscore/error.h"
#include "tomscore/evaluate.h"
#include "tomscore/extractor.h"
#include "tomscore/reward_service.h"

namespace {

using namespace tomscore;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

constexpr char kJudgeEnv[] = "TOMSCORE_JUDGE";
constexpr char kExtractorEnv[] = "TOMSCORE_EXTRACTOR";
constexpr char kDefaultModel[] = "gpt-4o";

// Attaches the offending file to errors thrown while reading it.
class FileError : public std::runtime_error {
 public:
  FileError(const std::string& path, const Error& cause)
      : std::runtime_error(fmt::format("{}: {}", path, cause.what())),
        code_(cause.code()) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

bool IsValidationCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError:
    case ErrorCode::kAtomParseError:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kUnknownExample:
    case ErrorCode::kConfigError:
    case ErrorCode::kIoError:
      return true;
    default:
      return false;
  }
}

template <typename F>
auto WithFile(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw FileError(path, e);
  }
}

HarnessConfig ReadConfig(const std::string& path) {
  if (path.empty()) return HarnessConfig{};
  return WithFile(path, [&] { return LoadConfig(path); });
}

std::vector<DatasetExample> ReadDataset(const std::string& path, const HarnessConfig& cfg) {
  return WithFile(path, [&] { return LoadDataset(std::filesystem::path(path), cfg.aliases); });
}

std::vector<ModelOutput> ReadOutputs(const std::string& path) {
  return WithFile(path, [&] { return LoadOutputs(std::filesystem::path(path)); });
}

std::shared_ptr<const Extractor> MakeExtractor(const HarnessConfig& cfg) {
  if (cfg.extractor == "dsl") return std::make_shared<DslExtractor>();
  std::shared_ptr<const ChatClient> client =
      HttpChatClient::FromEnvironment(kExtractorEnv, kDefaultModel);
  if (!client) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("extractor = llm needs {}_ENDPOINT", kExtractorEnv));
  }
  return std::make_shared<RemoteLlmExtractor>(std::move(client));
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write '{}'", path));
}

struct EvaluateArgs {
  std::string dataset;
  std::string outputs;
  std::string config;
  std::string out_prefix = "report";
};

int RunEvaluate(const EvaluateArgs& args) {
  const HarnessConfig cfg = ReadConfig(args.config);
  const auto dataset = ReadDataset(args.dataset, cfg);
  const auto outputs = ReadOutputs(args.outputs);
  const auto extractor = MakeExtractor(cfg);
  const auto sim_b = MakeSimilarity(cfg.similarity_b);
  const auto sim_s = MakeSimilarity(cfg.similarity_s);
  const std::unique_ptr<ChatClient> judge =
      HttpChatClient::FromEnvironment(kJudgeEnv, kDefaultModel);

  EvaluateContext ctx;
  ctx.config = &cfg;
  ctx.extractor = extractor.get();
  ctx.similarity_b = sim_b.get();
  ctx.similarity_s = sim_s.get();
  ctx.judge = judge.get();

  const EvaluationResult result =
      WithFile(args.outputs, [&] { return Evaluate(dataset, outputs, ctx); });
  for (const std::string& w : result.warnings) fmt::print(stderr, "warning: {}\n", w);

  const std::string tsv = result.table.ToTsv();
  WriteFile(args.out_prefix + ".tsv", tsv);
  WriteFile(args.out_prefix + ".json", result.table.ToJson().dump(2) + "\n");
  std::cout << tsv;
  return kExitOk;
}

struct RewardArgs {
  std::string dataset;
  std::string config;
  std::string listen = "stdio";
};

int RunReward(const RewardArgs& args) {
  const Transport transport = Transport::Parse(args.listen);
  HarnessConfig cfg = ReadConfig(args.config);
  auto dataset = ReadDataset(args.dataset, cfg);
  auto extractor = MakeExtractor(cfg);
  const Scorer scorer(std::move(dataset), std::move(cfg), std::move(extractor));

  if (transport.stdio) {
    ScoringPool pool(scorer.config().workers);
    StreamLineReader reader(std::cin, scorer.config().max_line_bytes);
    StreamLineWriter writer(std::cout);
    ServeConnection(scorer, pool, reader, writer);
    return kExitOk;
  }

  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  TcpServer server(scorer, transport.host, transport.port);
  fmt::print(stderr, "listening on {}:{}\n", transport.host, server.port());
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&stop_signals, &sig);
    server.Stop();
  });
  waiter.detach();
  server.Run();
  return kExitOk;
}

struct ToyArgs {
  std::string out;
  std::string outputs_text;
  std::string outputs_atoms;
};

void WriteSelfOutputs(const std::vector<DatasetExample>& dataset, RenderMode mode,
                      const std::string& path) {
  std::vector<ModelOutput> outputs;
  for (const DatasetExample& ex : dataset) {
    outputs.push_back({ex.id, RenderGroundTruth(ex, mode)});
  }
  std::ofstream out(path, std::ios::binary);
  WriteOutputs(outputs, out);
  if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write '{}'", path));
}

int RunToy(const ToyArgs& args) {
  const auto dataset = MakeToyDataset();
  WriteDataset(dataset, std::filesystem::path(args.out));
  if (!args.outputs_text.empty()) {
    WriteSelfOutputs(dataset, RenderMode::kText, args.outputs_text);
  }
  if (!args.outputs_atoms.empty()) {
    WriteSelfOutputs(dataset, RenderMode::kAtoms, args.outputs_atoms);
  }
  return kExitOk;
}

struct ValidateArgs {
  std::string dataset;
  std::string outputs;
  std::string config;
};

int RunValidate(const ValidateArgs& args) {
  const HarnessConfig cfg = ReadConfig(args.config);
  const auto dataset = ReadDataset(args.dataset, cfg);
  for (const DatasetExample& ex : dataset) {
    for (LayerKind kind : kAllLayers) {
      for (const VocabularyWarning& w : ValidateVocabulary(ex.layer(kind).sequence)) {
        fmt::print(stderr, "warning: {}: {} item {}: {}\n", ex.id, LayerName(kind),
                   w.index, w.message);
      }
    }
  }
  std::size_t output_count = 0;
  if (!args.outputs.empty()) {
    const auto outputs = ReadOutputs(args.outputs);
    output_count = outputs.size();
    std::set<std::string> ids;
    for (const DatasetExample& ex : dataset) ids.insert(ex.id);
    std::set<std::string> seen;
    for (const ModelOutput& out : outputs) {
      if (!ids.contains(out.example_id)) {
        throw FileError(args.outputs,
                        DatasetError(ErrorCode::kUnknownExample, out.line, "example_id",
                                     fmt::format("unknown example_id '{}'", out.example_id)));
      }
      if (!seen.insert(out.example_id).second) {
        throw FileError(args.outputs,
                        DatasetError(ErrorCode::kDuplicateId, out.line, "example_id",
                                     fmt::format("duplicate example_id '{}'", out.example_id)));
      }
    }
  }
  fmt::print("ok: {} examples, {} outputs\n", dataset.size(), output_count);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  signal(SIGPIPE, SIG_IGN);

  CLI::App app{"Scores layered mental-state reasoning traces."};
  app.require_subcommand(1);

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Score model outputs against a dataset");
  evaluate->add_option("--dataset", eval.dataset, "Dataset JSONL")->required();
  evaluate->add_option("--outputs", eval.outputs, "Model outputs JSONL")->required();
  evaluate->add_option("--config", eval.config, "INI config file");
  evaluate->add_option("--out-prefix", eval.out_prefix,
                       "Writes <prefix>.tsv and <prefix>.json")->capture_default_str();

  RewardArgs reward;
  auto* reward_cmd = app.add_subcommand("reward", "Serve rewards over NDJSON");
  reward_cmd->add_option("--dataset", reward.dataset, "Dataset JSONL")->required();
  reward_cmd->add_option("--config", reward.config, "INI config file");
  reward_cmd->add_option("--listen", reward.listen, "stdio or host:port")
      ->capture_default_str();

  ToyArgs toy;
  auto* toy_cmd = app.add_subcommand("toy-dataset", "Write the built-in toy dataset");
  toy_cmd->add_option("--out", toy.out, "Dataset JSONL to write")->required();
  toy_cmd->add_option("--outputs-text", toy.outputs_text,
                      "Also write ground-truth outputs with free-text layers");
  toy_cmd->add_option("--outputs-atoms", toy.outputs_atoms,
                      "Also write ground-truth outputs with atomic layers");

  ValidateArgs val;
  auto* validate = app.add_subcommand("validate", "Check a dataset and outputs file");
  validate->add_option("--dataset", val.dataset, "Dataset JSONL")->required();
  validate->add_option("--outputs", val.outputs, "Model outputs JSONL");
  validate->add_option("--config", val.config, "INI config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*evaluate) return RunEvaluate(eval);
    if (*reward_cmd) return RunReward(reward);
    if (*toy_cmd) return RunToy(toy);
    return RunValidate(val);
  } catch (const FileError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return IsValidationCode(e.code()) ? kExitInvalid : kExitFailure;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return IsValidationCode(e.code()) ? kExitInvalid : kExitFailure;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitFailure;
  }
}
