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

#ifndef TOMSCORE_CONFIG_H_
#define TOMSCORE_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "tomscore/atomic_dsl.h"
#include "tomscore/reward_engine.h"

namespace tomscore {

// Settings shared by the evaluate and reward commands. Loaded from an INI
// file; see docs/config.md for the keys.
struct HarnessConfig {
  RewardOptions reward;
  GrpoConfig grpo;
  AliasTable aliases = AliasTable::Default();
  std::string similarity_b = "token_f1";
  std::string similarity_s = "bow_cosine";
  std::string extractor = "dsl";  // "dsl" or "llm".

  // Service limits.
  std::size_t workers = 4;
  std::size_t max_in_flight = 64;     // Per connection.
  std::size_t max_connections = 16;
  std::size_t max_line_bytes = 16 << 20;

  void Validate() const;
};

// Throws Error(kConfigError) on syntax errors, unknown keys or bad values.
HarnessConfig ParseConfig(std::istream& in);
HarnessConfig LoadConfig(const std::filesystem::path& path);

}  // namespace tomscore

#endif  // TOMSCORE_CONFIG_H_
