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

#include "tomscore/dataset_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "tomscore/error.h"
#include "tomscore/hierarchy_parser.h"

namespace tomscore {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& RequireField(const json& obj, const char* key, std::size_t line,
                         const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw DatasetError(ErrorCode::kSchemaError, line, path + key, "missing field");
  }
  return *it;
}

std::string RequireString(const json& obj, const char* key, std::size_t line,
                          const std::string& path = "") {
  const json& v = RequireField(obj, key, line, path);
  if (!v.is_string()) {
    throw DatasetError(ErrorCode::kSchemaError, line, path + key, "expected a string");
  }
  return v.get<std::string>();
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

json ParseLine(const std::string& line, std::size_t line_no) {
  try {
    json doc = json::parse(line);
    if (!doc.is_object()) {
      throw DatasetError(ErrorCode::kSchemaError, line_no, "<line>",
                         "expected a JSON object");
    }
    return doc;
  } catch (const json::exception& e) {
    throw DatasetError(ErrorCode::kSchemaError, line_no, "<line>", e.what());
  }
}

DatasetExample ParseExample(const json& doc, std::size_t line,
                            const AliasTable& aliases) {
  DatasetExample ex;
  ex.id = RequireString(doc, "id", line);
  if (ex.id.empty()) {
    throw DatasetError(ErrorCode::kSchemaError, line, "id", "must be non-empty");
  }
  const std::string task = RequireString(doc, "task", line);
  const auto task_kind = TaskFromName(task);
  if (!task_kind) {
    throw DatasetError(ErrorCode::kSchemaError, line, "task",
                       fmt::format("unknown task '{}'", task));
  }
  ex.task = *task_kind;
  ex.simulator = RequireString(doc, "simulator", line);
  ex.video_ref = RequireString(doc, "video_ref", line);

  const json& chars = RequireField(doc, "characters", line, "");
  if (!chars.is_array()) {
    throw DatasetError(ErrorCode::kSchemaError, line, "characters", "expected an array");
  }
  for (const json& c : chars) {
    if (!c.is_string() || c.get<std::string>().empty()) {
      throw DatasetError(ErrorCode::kSchemaError, line, "characters",
                         "expected non-empty strings");
    }
    ex.characters.push_back(c.get<std::string>());
  }

  const json& gt = RequireField(doc, "ground_truth", line, "");
  if (!gt.is_object()) {
    throw DatasetError(ErrorCode::kSchemaError, line, "ground_truth", "expected an object");
  }
  const ParseOptions options = ex.parse_options(aliases);
  for (LayerKind kind : kAllLayers) {
    const std::string name(LayerName(kind));
    const std::string path = "ground_truth." + name;
    auto it = gt.find(name);
    if (it == gt.end()) {
      throw DatasetError(ErrorCode::kSchemaError, line, path, "missing layer");
    }
    if (!it->is_object()) {
      throw DatasetError(ErrorCode::kSchemaError, line, path, "expected an object");
    }
    GroundTruthLayer& layer = ex.ground_truth[LayerIndex(kind)];
    layer.text = RequireString(*it, "text", line, path + ".");
    layer.atoms = RequireString(*it, "atoms", line, path + ".");
    if (IsBlank(layer.text)) {
      throw DatasetError(ErrorCode::kSchemaError, line, path + ".text", "empty text");
    }
    if (ContainsLayerTag(layer.text) || ContainsLayerTag(layer.atoms)) {
      throw DatasetError(ErrorCode::kSchemaError, line, path,
                         "annotation contains a hierarchy tag");
    }
    try {
      layer.sequence = ParseAtomic(layer.atoms, kind, options);
    } catch (const SyntaxError& e) {
      throw DatasetError(ErrorCode::kAtomParseError, line, path + ".atoms",
                         fmt::format("position {}: {}", e.position(), e.detail()));
    } catch (const Error& e) {
      throw DatasetError(ErrorCode::kAtomParseError, line, path + ".atoms", e.what());
    }
    if (layer.sequence.items.empty()) {
      throw DatasetError(ErrorCode::kSchemaError, line, path + ".atoms",
                         "no atomic items");
    }
    if (kind == LayerKind::kAction) {
      const auto warnings = ValidateVocabulary(layer.sequence);
      if (!warnings.empty()) {
        throw DatasetError(ErrorCode::kSchemaError, line, path + ".atoms",
                           warnings.front().message);
      }
    }
  }
  return ex;
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}'", path.string()));
  }
  return in;
}

std::ofstream OpenForWrite(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, fmt::format("cannot write '{}'", path.string()));
  }
  return out;
}

}  // namespace

std::string_view TaskName(TaskKind task) {
  return task == TaskKind::kFalseBelief ? "false_belief" : "implicit_goal";
}

std::optional<TaskKind> TaskFromName(std::string_view name) {
  if (name == "false_belief") return TaskKind::kFalseBelief;
  if (name == "implicit_goal") return TaskKind::kImplicitGoal;
  return std::nullopt;
}

ParseOptions DatasetExample::parse_options(const AliasTable& aliases) const {
  ParseOptions options;
  options.aliases = &aliases;
  options.characters = characters;
  return options;
}

std::vector<DatasetExample> LoadDataset(std::istream& in, const AliasTable& aliases) {
  std::vector<DatasetExample> examples;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    DatasetExample ex = ParseExample(ParseLine(line, line_no), line_no, aliases);
    if (!ids.insert(ex.id).second) {
      throw DatasetError(ErrorCode::kDuplicateId, line_no, "id",
                         fmt::format("duplicate id '{}'", ex.id));
    }
    examples.push_back(std::move(ex));
  }
  return examples;
}

std::vector<DatasetExample> LoadDataset(const std::filesystem::path& path,
                                        const AliasTable& aliases) {
  std::ifstream in = OpenForRead(path);
  return LoadDataset(in, aliases);
}

void WriteDataset(const std::vector<DatasetExample>& examples, std::ostream& out) {
  for (const DatasetExample& ex : examples) {
    ordered_json doc;
    doc["id"] = ex.id;
    doc["task"] = TaskName(ex.task);
    doc["simulator"] = ex.simulator;
    doc["video_ref"] = ex.video_ref;
    doc["characters"] = ex.characters;
    ordered_json gt = ordered_json::object();
    for (LayerKind kind : kAllLayers) {
      const GroundTruthLayer& layer = ex.layer(kind);
      gt[std::string(LayerName(kind))] = {{"text", layer.text}, {"atoms", layer.atoms}};
    }
    doc["ground_truth"] = std::move(gt);
    out << doc.dump() << '\n';
  }
}

void WriteDataset(const std::vector<DatasetExample>& examples,
                  const std::filesystem::path& path) {
  std::ofstream out = OpenForWrite(path);
  WriteDataset(examples, out);
}

std::vector<ModelOutput> LoadOutputs(std::istream& in) {
  std::vector<ModelOutput> outputs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const json doc = ParseLine(line, line_no);
    ModelOutput out;
    out.example_id = RequireString(doc, "example_id", line_no);
    out.raw = RequireString(doc, "raw", line_no);
    out.line = line_no;
    outputs.push_back(std::move(out));
  }
  return outputs;
}

std::vector<ModelOutput> LoadOutputs(const std::filesystem::path& path) {
  std::ifstream in = OpenForRead(path);
  return LoadOutputs(in);
}

void WriteOutputs(const std::vector<ModelOutput>& outputs, std::ostream& out) {
  for (const ModelOutput& o : outputs) {
    ordered_json doc;
    doc["example_id"] = o.example_id;
    doc["raw"] = o.raw;
    out << doc.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

std::string RenderGroundTruth(const DatasetExample& example, RenderMode mode) {
  std::string out;
  for (LayerKind kind : kAllLayers) {
    const GroundTruthLayer& layer = example.layer(kind);
    if (!out.empty()) out += '\n';
    out += fmt::format("<{}>", LayerName(kind));
    const bool atoms = mode == RenderMode::kAtoms || kind == LayerKind::kAction;
    out += atoms ? Render(layer.sequence) : layer.text;
  }
  return out;
}

}  // namespace tomscore
