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

#ifndef TOMSCORE_EVAL_METRICS_H_
#define TOMSCORE_EVAL_METRICS_H_

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tomscore/atomic_dsl.h"
#include "tomscore/layer.h"
#include "tomscore/sequence_metrics.h"

namespace tomscore {

// Text similarity in [0, 1] used for the free-text layers.
class SimilarityPlug {
 public:
  virtual ~SimilarityPlug() = default;
  virtual std::string name() const = 0;
  virtual double Score(std::string_view gen_text, std::string_view ref_text) const = 0;
};

// Lowercased ASCII alphanumeric word tokens.
std::vector<std::string> WordTokens(std::string_view text);

// Token-level F1 with clipped unigram overlap. Two token-free texts score 1.
double DefaultSimilarity(std::string_view gen_text, std::string_view ref_text);

// Cosine of bag-of-words count vectors. Two token-free texts score 1.
double BagOfWordsCosine(std::string_view gen_text, std::string_view ref_text);

class TokenF1Similarity : public SimilarityPlug {
 public:
  std::string name() const override { return "token_f1"; }
  double Score(std::string_view gen, std::string_view ref) const override {
    return DefaultSimilarity(gen, ref);
  }
};

class BagOfWordsCosineSimilarity : public SimilarityPlug {
 public:
  std::string name() const override { return "bow_cosine"; }
  double Score(std::string_view gen, std::string_view ref) const override {
    return BagOfWordsCosine(gen, ref);
  }
};

// Delegates to an external scorer over HTTP: POST {"gen": ..., "ref": ...}
// to `url`, expecting {"score": x} with x in [0, 1].
class HttpSimilarity : public SimilarityPlug {
 public:
  explicit HttpSimilarity(std::string url);
  std::string name() const override { return "http:" + url_; }
  double Score(std::string_view gen, std::string_view ref) const override;

 private:
  std::string url_;
};

// Builds a plug from a config spec: "token_f1", "bow_cosine" or "http:<url>".
std::unique_ptr<SimilarityPlug> MakeSimilarity(std::string_view spec);

struct SuccessRateResult {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;
  double sr = 0.0;
};

// SR = (2 R1 + 3 R2 + 5 RL) / 10.
double SuccessRateFromComponents(double r1, double r2, double rl);

// Throws Error(kEmptyReference) when `ref` is empty.
SuccessRateResult SuccessRate(const AtomicSequence& gen, const AtomicSequence& ref,
                              ScoreSelect select = ScoreSelect::kF1);

struct ActionCorrectnessResult {
  int ac = 0;                  // 1 iff every reference action is matched.
  std::size_t matched = 0;
  std::size_t reference_size = 0;
  double ratio = 0.0;          // matched / reference_size, unfloored.
};

// Size of the largest one-to-one in-order matching between `gen` and `ref`
// (their longest common subsequence). AC is 1 exactly when every reference
// action appears in `gen` in order. A left-to-right greedy scan can miss
// such a cover, e.g. gen [b, a, b] against ref [a, b].
//
// Throws Error(kEmptyReference) when `ref` is empty.
ActionCorrectnessResult ActionCorrectness(const AtomicSequence& gen,
                                          const AtomicSequence& ref);

// Layers scored by text similarity (everything except Action).
inline constexpr std::array<LayerKind, 5> kTextLayers = {
    LayerKind::kPerception, LayerKind::kBelief, LayerKind::kDesire,
    LayerKind::kIntention, LayerKind::kDecision};

struct TextLayerScore {
  double similarity_b = 0.0;
  double similarity_s = 0.0;
};

struct LayerScores {
  std::string example_id;
  std::array<TextLayerScore, kTextLayers.size()> text;  // kTextLayers order.
  double action_sr = 0.0;
  int action_ac = 0;
  std::size_t action_matched = 0;
  std::size_t action_reference_size = 0;
  std::optional<double> bpc;  // 0..10, only when a judge ran.
};

// Dataset-level table. Rows are sorted by example id; everything except
// BPC is scaled to 0..100.
struct ReportTable {
  std::vector<std::string> columns;
  struct Row {
    std::string id;
    std::vector<std::optional<double>> values;  // Aligned with columns.
  };
  std::vector<Row> rows;
  std::vector<std::optional<double>> means;  // Aligned with columns.

  // {"columns": [...], "rows": [{"id": ..., "values": [...]}], "means": [...]}
  nlohmann::ordered_json ToJson() const;
  // Header line, one line per row, then a "mean" line. Values use four
  // decimals; absent values are empty fields.
  std::string ToTsv() const;
};

// Column names: "<Layer>_B", "<Layer>_S" for each text layer, then "SR",
// "AC", "AC_micro", and "BPC" when any row carries a judge score.
// AC is the mean of the per-example indicator; AC_micro is
// sum(matched) / sum(reference_size).
ReportTable Aggregate(std::vector<LayerScores> rows);

}  // namespace tomscore

#endif  // TOMSCORE_EVAL_METRICS_H_
