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

#include "tomscore/evaluate.h"

#include <map>
#include <set>

#include <fmt/core.h>

#include "tomscore/error.h"
#include "tomscore/hierarchy_parser.h"

namespace tomscore {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

LayerScores ScoreOutput(const DatasetExample& example, const ModelOutput& output,
                        const EvaluateContext& context,
                        std::vector<std::string>& warnings) {
  LayerScores scores;
  scores.example_id = example.id;
  const GroundTruthLayer& gt_action = example.layer(LayerKind::kAction);
  scores.action_reference_size = gt_action.sequence.items.size();

  ReasoningTrace trace;
  try {
    trace = ParseTrace(output.raw);
  } catch (const DuplicateLayerError& e) {
    warnings.push_back(fmt::format("{}: {}; scored as zero", example.id, e.what()));
    return scores;
  }

  for (std::size_t i = 0; i < kTextLayers.size(); ++i) {
    const TraceLayer* layer = trace.Find(kTextLayers[i]);
    if (layer == nullptr) continue;
    const std::string_view gen = Trim(layer->text);
    const std::string_view ref = Trim(example.layer(kTextLayers[i]).text);
    scores.text[i].similarity_b = context.similarity_b->Score(gen, ref);
    scores.text[i].similarity_s = context.similarity_s->Score(gen, ref);
  }

  if (const TraceLayer* action = trace.Find(LayerKind::kAction)) {
    try {
      const AtomicSequence gen = context.extractor->Extract(
          action->text, LayerKind::kAction, example.parse_options(context.config->aliases));
      scores.action_sr =
          SuccessRate(gen, gt_action.sequence, context.config->reward.select).sr;
      const ActionCorrectnessResult ac = ActionCorrectness(gen, gt_action.sequence);
      scores.action_ac = ac.ac;
      scores.action_matched = ac.matched;
    } catch (const std::exception& e) {
      warnings.push_back(
          fmt::format("{}: Action layer not scored: {}", example.id, e.what()));
    }
  }

  if (context.judge != nullptr) {
    try {
      scores.bpc = JudgeBpc(trace, *context.judge, context.retry);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kJudgeMalformedReply) throw;
      warnings.push_back(fmt::format("{}: {}", example.id, e.what()));
    }
  }
  return scores;
}

EvaluationResult Evaluate(const std::vector<DatasetExample>& dataset,
                          const std::vector<ModelOutput>& outputs,
                          const EvaluateContext& context) {
  std::map<std::string_view, const DatasetExample*> index;
  for (const DatasetExample& ex : dataset) index.emplace(ex.id, &ex);

  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    const ModelOutput& out = outputs[i];
    const std::size_t line = out.line != 0 ? out.line : i + 1;
    if (!index.contains(out.example_id)) {
      throw DatasetError(ErrorCode::kUnknownExample, line, "example_id",
                         fmt::format("unknown example_id '{}'", out.example_id));
    }
    if (!seen.insert(out.example_id).second) {
      throw DatasetError(ErrorCode::kDuplicateId, line, "example_id",
                         fmt::format("duplicate example_id '{}'", out.example_id));
    }
  }

  EvaluationResult result;
  std::vector<LayerScores> rows;
  rows.reserve(outputs.size());
  for (const ModelOutput& out : outputs) {
    rows.push_back(ScoreOutput(*index.at(out.example_id), out, context, result.warnings));
  }
  result.table = Aggregate(std::move(rows));
  return result;
}

}  // namespace tomscore
