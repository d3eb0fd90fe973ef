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

#include "tomscore/config.h"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/core.h>

#include "tomscore/error.h"

namespace tomscore {
namespace {

namespace pt = boost::property_tree;

[[noreturn]] void Fail(const std::string& key, const std::string& message) {
  throw Error(ErrorCode::kConfigError, fmt::format("config {}: {}", key, message));
}

double ToDouble(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) Fail(key, fmt::format("'{}' is not a number", value));
  return out;
}

std::size_t ToSize(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || out == 0) {
    Fail(key, fmt::format("'{}' is not a positive integer", value));
  }
  return out;
}

void ApplyReward(HarnessConfig& cfg, const std::string& key, const std::string& value) {
  const std::string full = "reward." + key;
  if (key == "alpha_atomic") {
    cfg.reward.weights.alpha_atomic = ToDouble(full, value);
  } else if (key == "alpha_local") {
    cfg.reward.weights.alpha_local = ToDouble(full, value);
  } else if (key == "alpha_global") {
    cfg.reward.weights.alpha_global = ToDouble(full, value);
  } else if (key == "score") {
    if (value == "f1") {
      cfg.reward.select = ScoreSelect::kF1;
    } else if (value == "recall") {
      cfg.reward.select = ScoreSelect::kRecall;
    } else {
      Fail(full, "expected f1 or recall");
    }
  } else if (key == "aggregation") {
    if (value == "per_layer") {
      cfg.reward.aggregation = LayerAggregation::kPerLayer;
    } else if (value == "concatenated") {
      cfg.reward.aggregation = LayerAggregation::kConcatenated;
    } else {
      Fail(full, "expected per_layer or concatenated");
    }
  } else {
    Fail(full, "unknown key");
  }
}

void ApplyGrpo(HarnessConfig& cfg, const std::string& key, const std::string& value) {
  const std::string full = "grpo." + key;
  if (key == "epsilon") {
    cfg.grpo.epsilon = ToDouble(full, value);
  } else if (key == "beta") {
    cfg.grpo.beta = ToDouble(full, value);
  } else if (key == "std_floor") {
    cfg.grpo.std_floor = ToDouble(full, value);
  } else {
    Fail(full, "unknown key");
  }
}

void ApplyMetrics(HarnessConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "similarity_b") {
    cfg.similarity_b = value;
  } else if (key == "similarity_s") {
    cfg.similarity_s = value;
  } else if (key == "extractor") {
    if (value != "dsl" && value != "llm") Fail("metrics.extractor", "expected dsl or llm");
    cfg.extractor = value;
  } else {
    Fail("metrics." + key, "unknown key");
  }
}

void ApplyService(HarnessConfig& cfg, const std::string& key, const std::string& value) {
  const std::string full = "service." + key;
  if (key == "workers") {
    cfg.workers = ToSize(full, value);
  } else if (key == "max_in_flight") {
    cfg.max_in_flight = ToSize(full, value);
  } else if (key == "max_connections") {
    cfg.max_connections = ToSize(full, value);
  } else if (key == "max_line_bytes") {
    cfg.max_line_bytes = ToSize(full, value);
  } else {
    Fail(full, "unknown key");
  }
}

}  // namespace

void HarnessConfig::Validate() const {
  reward.weights.Validate();
  grpo.Validate();
}

HarnessConfig ParseConfig(std::istream& in) {
  static const std::set<std::string> kSections = {"reward", "grpo", "alias", "metrics",
                                                   "service"};
  std::ostringstream text;
  text << in.rdbuf();

  // read_ini silently drops a trailing empty section, so headers are
  // checked on the raw text.
  bool alias_section = false;
  {
    std::istringstream lines(text.str());
    std::string line;
    while (std::getline(lines, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] != '[') continue;
      const auto close = line.find(']', first);
      if (close == std::string::npos) continue;  // read_ini reports it.
      std::string name = line.substr(first + 1, close - first - 1);
      name.erase(0, name.find_first_not_of(" \t"));
      name.erase(name.find_last_not_of(" \t") + 1);
      if (!kSections.contains(name)) Fail(name, "unknown section");
      alias_section |= name == "alias";
    }
  }

  pt::ptree tree;
  try {
    std::istringstream body(text.str());
    pt::read_ini(body, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }

  HarnessConfig cfg;
  // A present [alias] section replaces the defaults, even when empty.
  if (alias_section) cfg.aliases = AliasTable(std::map<std::string, std::string>{});
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      Fail(section, "keys must live in a [section]");
    }
    if (!kSections.contains(section)) Fail(section, "unknown section");
    if (section == "alias") {
      std::map<std::string, std::string> aliases;
      for (const auto& [from, to] : body) aliases[from] = to.data();
      cfg.aliases = AliasTable(std::move(aliases));
      continue;
    }
    for (const auto& [key, node] : body) {
      const std::string& value = node.data();
      if (section == "reward") {
        ApplyReward(cfg, key, value);
      } else if (section == "grpo") {
        ApplyGrpo(cfg, key, value);
      } else if (section == "metrics") {
        ApplyMetrics(cfg, key, value);
      } else {
        ApplyService(cfg, key, value);
      }
    }
  }
  cfg.Validate();
  return cfg;
}

HarnessConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kConfigError, fmt::format("cannot open '{}'", path.string()));
  }
  return ParseConfig(in);
}

}  // namespace tomscore
