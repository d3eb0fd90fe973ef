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

#ifndef TOMSCORE_REWARD_ENGINE_H_
#define TOMSCORE_REWARD_ENGINE_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tomscore/atomic_dsl.h"
#include "tomscore/layer.h"
#include "tomscore/sequence_metrics.h"

namespace tomscore {

// Weights of the atomic (ROUGE-1), local (ROUGE-2) and global (ROUGE-L)
// components of the mind reward.
struct RewardWeights {
  double alpha_atomic = 0.2;
  double alpha_local = 0.3;
  double alpha_global = 0.5;

  // Throws Error(kConfigError) on negative or non-finite weights.
  void Validate() const;
  double Sum() const { return alpha_atomic + alpha_local + alpha_global; }
};

enum class LayerAggregation {
  kPerLayer,      // Score each reference layer, then average uniformly.
  kConcatenated,  // Score one sequence built from all layers in order.
};

struct RewardOptions {
  RewardWeights weights;
  ScoreSelect select = ScoreSelect::kF1;
  LayerAggregation aggregation = LayerAggregation::kPerLayer;
};

struct LayerComponents {
  double r1 = 0.0;
  double r2 = 0.0;
  double rl = 0.0;

  bool operator==(const LayerComponents&) const = default;
};

struct RewardBreakdown {
  std::map<LayerKind, LayerComponents> per_layer;  // Empty in concatenated mode.
  double r_atomic = 0.0;
  double r_local = 0.0;
  double r_global = 0.0;
  double r_mind = 0.0;
  int r_format = 0;
  double total = 0.0;
  std::vector<std::string> diagnostics;

  bool operator==(const RewardBreakdown&) const = default;
};

using LayerSequences = std::map<LayerKind, AtomicSequence>;

// r_mind = a1 * r_atomic + a2 * r_local + a3 * r_global.
double WeightedMind(const RewardWeights& w, double r_atomic, double r_local,
                    double r_global);

// Scores every layer present in `ref`. Layers missing from `gen` score zero;
// layers only in `gen` are ignored. r_format and total are left at zero.
//
// Throws Error(kEmptyReference) when `ref` is empty.
RewardBreakdown MindReward(const LayerSequences& gen, const LayerSequences& ref,
                           const RewardOptions& options = {});

// total = r_mind + fmt, stored into `breakdown` and returned.
double TotalReward(RewardBreakdown& breakdown, int fmt);

struct GrpoConfig {
  double epsilon = 0.2;
  double beta = 0.04;
  double std_floor = 1e-6;

  void Validate() const;
};

struct GroupSample {
  double reward = 0.0;
  double ratio = 1.0;   // pi_theta(o|q) / pi_theta_old(o|q)
  double kl_ref = 0.0;  // Per-sample KL(pi_theta || pi_ref) estimate.
};

// A_i = (R_i - mean) / max(std, std_floor) with population std. Returns all
// zeros when every reward is equal.
//
// Throws Error(kEmptyGroup) for an empty group.
std::vector<double> GroupAdvantages(std::span<const double> rewards,
                                    const GrpoConfig& cfg = {});

// Clipped surrogate averaged over the group, minus beta times the mean KL
// estimate. Advantages are derived from the samples' rewards.
double GrpoObjective(std::span<const GroupSample> samples,
                     const GrpoConfig& cfg = {});

}  // namespace tomscore

#endif  // TOMSCORE_REWARD_ENGINE_H_
