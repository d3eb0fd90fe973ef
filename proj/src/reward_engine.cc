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

#include "tomscore/reward_engine.h"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "tomscore/error.h"

namespace tomscore {
namespace {

LayerComponents Components(const std::vector<AtomicItem>& gen,
                           const std::vector<AtomicItem>& ref,
                           ScoreSelect select) {
  const RougeTriple t = RougeComponents(gen, ref, AtomsEqual);
  return {Select(t.r1, select), Select(t.r2, select), Select(t.rl, select)};
}

}  // namespace

void RewardWeights::Validate() const {
  for (double a : {alpha_atomic, alpha_local, alpha_global}) {
    if (!std::isfinite(a) || a < 0) {
      throw Error(ErrorCode::kConfigError,
                  fmt::format("reward weights must be finite and >= 0, got {}", a));
    }
  }
}

double WeightedMind(const RewardWeights& w, double r_atomic, double r_local,
                    double r_global) {
  return w.alpha_atomic * r_atomic + w.alpha_local * r_local +
         w.alpha_global * r_global;
}

RewardBreakdown MindReward(const LayerSequences& gen, const LayerSequences& ref,
                           const RewardOptions& options) {
  if (ref.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference has no layers");
  }
  RewardBreakdown out;

  if (options.aggregation == LayerAggregation::kConcatenated) {
    std::vector<AtomicItem> gen_all;
    std::vector<AtomicItem> ref_all;
    for (const auto& [kind, seq] : ref) {
      ref_all.insert(ref_all.end(), seq.items.begin(), seq.items.end());
      if (auto it = gen.find(kind); it != gen.end()) {
        gen_all.insert(gen_all.end(), it->second.items.begin(),
                       it->second.items.end());
      }
    }
    const LayerComponents c = Components(gen_all, ref_all, options.select);
    out.r_atomic = c.r1;
    out.r_local = c.r2;
    out.r_global = c.rl;
  } else {
    for (const auto& [kind, ref_seq] : ref) {
      LayerComponents c;
      if (auto it = gen.find(kind); it != gen.end()) {
        c = Components(it->second.items, ref_seq.items, options.select);
      }
      out.per_layer[kind] = c;
      out.r_atomic += c.r1;
      out.r_local += c.r2;
      out.r_global += c.rl;
    }
    const double n = static_cast<double>(ref.size());
    out.r_atomic /= n;
    out.r_local /= n;
    out.r_global /= n;
  }
  out.r_mind = WeightedMind(options.weights, out.r_atomic, out.r_local,
                            out.r_global);
  return out;
}

double TotalReward(RewardBreakdown& breakdown, int fmt) {
  breakdown.r_format = fmt;
  breakdown.total = breakdown.r_mind + fmt;
  return breakdown.total;
}

void GrpoConfig::Validate() const {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("epsilon must lie in (0, 1), got {}", epsilon));
  }
  if (!(beta >= 0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("beta must be finite and >= 0, got {}", beta));
  }
  if (!(std_floor > 0) || !std::isfinite(std_floor)) {
    throw Error(ErrorCode::kConfigError,
                fmt::format("std_floor must be finite and > 0, got {}", std_floor));
  }
}

std::vector<double> GroupAdvantages(std::span<const double> rewards,
                                    const GrpoConfig& cfg) {
  if (rewards.empty()) throw Error(ErrorCode::kEmptyGroup, "EmptyGroup");
  for (double r : rewards) {
    if (!std::isfinite(r)) {
      throw Error(ErrorCode::kInvalidSample, fmt::format("reward {} is not finite", r));
    }
  }
  const auto [lo, hi] = std::minmax_element(rewards.begin(), rewards.end());
  if (*lo == *hi) return std::vector<double>(rewards.size(), 0.0);

  const double g = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= g;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  var /= g;
  const double denom = std::max(std::sqrt(var), cfg.std_floor);

  std::vector<double> adv;
  adv.reserve(rewards.size());
  for (double r : rewards) adv.push_back((r - mean) / denom);
  return adv;
}

double GrpoObjective(std::span<const GroupSample> samples, const GrpoConfig& cfg) {
  if (samples.empty()) throw Error(ErrorCode::kEmptyGroup, "EmptyGroup");
  std::vector<double> rewards;
  rewards.reserve(samples.size());
  for (const GroupSample& s : samples) {
    if (!std::isfinite(s.ratio) || s.ratio <= 0) {
      throw Error(ErrorCode::kInvalidSample,
                  fmt::format("ratio must be finite and > 0, got {}", s.ratio));
    }
    if (!std::isfinite(s.kl_ref)) {
      throw Error(ErrorCode::kInvalidSample,
                  fmt::format("kl_ref must be finite, got {}", s.kl_ref));
    }
    rewards.push_back(s.reward);
  }
  const std::vector<double> adv = GroupAdvantages(rewards, cfg);

  double surrogate = 0.0;
  double kl = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double ratio = samples[i].ratio;
    const double clipped = std::clamp(ratio, 1.0 - cfg.epsilon, 1.0 + cfg.epsilon);
    surrogate += std::min(ratio * adv[i], clipped * adv[i]);
    kl += samples[i].kl_ref;
  }
  const double g = static_cast<double>(samples.size());
  return surrogate / g - cfg.beta * (kl / g);
}

}  // namespace tomscore
