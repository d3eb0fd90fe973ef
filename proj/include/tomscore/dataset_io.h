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

#ifndef TOMSCORE_DATASET_IO_H_
#define TOMSCORE_DATASET_IO_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tomscore/atomic_dsl.h"
#include "tomscore/layer.h"

namespace tomscore {

enum class TaskKind { kFalseBelief, kImplicitGoal };

// "false_belief" / "implicit_goal".
std::string_view TaskName(TaskKind task);
std::optional<TaskKind> TaskFromName(std::string_view name);

struct GroundTruthLayer {
  std::string text;   // Free-text annotation.
  std::string atoms;  // Atomic DSL, as written in the file.
  AtomicSequence sequence;  // Parsed and canonicalized `atoms`.

  bool operator==(const GroundTruthLayer&) const = default;
};

struct DatasetExample {
  std::string id;
  TaskKind task = TaskKind::kFalseBelief;
  std::string simulator;
  std::string video_ref;  // Opaque; never opened.
  std::vector<std::string> characters;
  std::array<GroundTruthLayer, kNumLayers> ground_truth;  // Indexed by LayerIndex.

  const GroundTruthLayer& layer(LayerKind kind) const {
    return ground_truth[LayerIndex(kind)];
  }
  ParseOptions parse_options(const AliasTable& aliases = AliasTable::Default()) const;

  bool operator==(const DatasetExample&) const = default;
};

struct ModelOutput {
  std::string example_id;
  std::string raw;
  std::size_t line = 0;  // Source line when loaded from a file.

  bool operator==(const ModelOutput& o) const {
    return example_id == o.example_id && raw == o.raw;
  }
};

// Reads JSON Lines, one example per non-blank line, and validates every
// example: all six layers present, texts free of hierarchy tags, atoms parse
// cleanly, Action atoms use registered verbs only, ids unique.
//
// Throws DatasetError with kSchemaError, kAtomParseError or kDuplicateId.
std::vector<DatasetExample> LoadDataset(std::istream& in,
                                        const AliasTable& aliases = AliasTable::Default());
std::vector<DatasetExample> LoadDataset(const std::filesystem::path& path,
                                        const AliasTable& aliases = AliasTable::Default());

void WriteDataset(const std::vector<DatasetExample>& examples, std::ostream& out);
void WriteDataset(const std::vector<DatasetExample>& examples,
                  const std::filesystem::path& path);

// {"example_id": ..., "raw": ...} per line.
std::vector<ModelOutput> LoadOutputs(std::istream& in);
std::vector<ModelOutput> LoadOutputs(const std::filesystem::path& path);
void WriteOutputs(const std::vector<ModelOutput>& outputs, std::ostream& out);

// Ten hand-written examples, including "supp-b4-1" (apple moved into the
// fridge) and "supp-b4-2" (wheelchair blocked by a fire hydrant).
std::vector<DatasetExample> MakeToyDataset();

enum class RenderMode {
  kText,   // Free text for Perception..Decision, atoms for Action.
  kAtoms,  // Atoms in every layer.
};

// The ground-truth annotation as a tagged trace.
std::string RenderGroundTruth(const DatasetExample& example, RenderMode mode);

}  // namespace tomscore

#endif  // TOMSCORE_DATASET_IO_H_
