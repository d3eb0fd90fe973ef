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

#ifndef TOMSCORE_LAYER_H_
#define TOMSCORE_LAYER_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace tomscore {

// The six reasoning layers, declared in hierarchy order.
enum class LayerKind {
  kPerception = 0,
  kBelief,
  kDesire,
  kIntention,
  kDecision,
  kAction,
};

inline constexpr std::size_t kNumLayers = 6;

inline constexpr std::array<LayerKind, kNumLayers> kAllLayers = {
    LayerKind::kPerception, LayerKind::kBelief,   LayerKind::kDesire,
    LayerKind::kIntention,  LayerKind::kDecision, LayerKind::kAction,
};

constexpr std::size_t LayerIndex(LayerKind kind) {
  return static_cast<std::size_t>(kind);
}

// Tag name without angle brackets: "Perception", "Belief", ...
std::string_view LayerName(LayerKind kind);

// Inverse of LayerName; exact case.
std::optional<LayerKind> LayerFromName(std::string_view name);

// Belief, Desire, Intention and Decision carry mental predicates; Perception
// and Action carry physical actions.
constexpr bool IsMentalLayer(LayerKind kind) {
  return kind != LayerKind::kPerception && kind != LayerKind::kAction;
}

}  // namespace tomscore

#endif  // TOMSCORE_LAYER_H_
