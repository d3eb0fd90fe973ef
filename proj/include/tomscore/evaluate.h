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

#ifndef TOMSCORE_EVALUATE_H_
#define TOMSCORE_EVALUATE_H_

#include <string>
#include <vector>

#include "tomscore/config.h"
#include "tomscore/dataset_io.h"
#include "tomscore/eval_metrics.h"
#include "tomscore/extractor.h"
#include "tomscore/judge.h"

namespace tomscore {

struct EvaluateContext {
  const HarnessConfig* config = nullptr;
  const Extractor* extractor = nullptr;
  const SimilarityPlug* similarity_b = nullptr;
  const SimilarityPlug* similarity_s = nullptr;
  const ChatClient* judge = nullptr;  // Optional; no BPC column without it.
  RetryPolicy retry;
};

struct EvaluationResult {
  ReportTable table;
  std::vector<std::string> warnings;
};

// Scores one model output. Text layers go through both similarity plugs;
// the Action layer is extracted and scored with SR and AC. Output that
// cannot be parsed scores zero in the affected layers and adds a warning.
//
// Throws Error(kJudgeUnavailable) when the judge cannot be reached.
LayerScores ScoreOutput(const DatasetExample& example, const ModelOutput& output,
                        const EvaluateContext& context,
                        std::vector<std::string>& warnings);

// Throws DatasetError(kUnknownExample) for an output naming an id absent
// from the dataset and DatasetError(kDuplicateId) for a repeated id.
EvaluationResult Evaluate(const std::vector<DatasetExample>& dataset,
                          const std::vector<ModelOutput>& outputs,
                          const EvaluateContext& context);

}  // namespace tomscore

#endif  // TOMSCORE_EVALUATE_H_
