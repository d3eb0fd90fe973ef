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

#include "tomscore/hierarchy_parser.h"

#include <array>
#include <optional>

#include <fmt/core.h>

namespace tomscore {
namespace {

struct TagHit {
  LayerKind kind;
  bool closing;
  std::size_t begin;
  std::size_t end;  // One past '>'.
};

// Matches "<Name>" or "</Name>" starting at `pos`, which must hold '<'.
std::optional<TagHit> MatchTag(std::string_view source, std::size_t pos) {
  std::size_t name_begin = pos + 1;
  bool closing = false;
  if (name_begin < source.size() && source[name_begin] == '/') {
    closing = true;
    ++name_begin;
  }
  for (LayerKind kind : kAllLayers) {
    const std::string_view name = LayerName(kind);
    if (source.substr(name_begin, name.size()) != name) continue;
    const std::size_t close = name_begin + name.size();
    if (close < source.size() && source[close] == '>') {
      return TagHit{kind, closing, pos, close + 1};
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view LayerName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kPerception: return "Perception";
    case LayerKind::kBelief: return "Belief";
    case LayerKind::kDesire: return "Desire";
    case LayerKind::kIntention: return "Intention";
    case LayerKind::kDecision: return "Decision";
    case LayerKind::kAction: return "Action";
  }
  return "";
}

std::optional<LayerKind> LayerFromName(std::string_view name) {
  for (LayerKind kind : kAllLayers) {
    if (LayerName(kind) == name) return kind;
  }
  return std::nullopt;
}

DuplicateLayerError::DuplicateLayerError(LayerKind kind)
    : Error(ErrorCode::kDuplicateLayer,
            fmt::format("DuplicateLayer({})", LayerName(kind))),
      kind_(kind) {}

const TraceLayer* ReasoningTrace::Find(LayerKind kind) const {
  for (const TraceLayer& layer : layers) {
    if (layer.kind == kind) return &layer;
  }
  return nullptr;
}

ReasoningTrace ParseTrace(std::string_view source) {
  std::vector<TagHit> hits;
  for (std::size_t pos = source.find('<'); pos != std::string_view::npos;
       pos = source.find('<', pos + 1)) {
    if (auto hit = MatchTag(source, pos)) {
      hits.push_back(*hit);
      pos = hit->end - 1;
    }
  }

  ReasoningTrace trace;
  trace.source = std::string(source);
  std::array<bool, kNumLayers> seen{};
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const TagHit& hit = hits[i];
    if (hit.closing) continue;
    if (seen[LayerIndex(hit.kind)]) throw DuplicateLayerError(hit.kind);
    seen[LayerIndex(hit.kind)] = true;
    const std::size_t text_end =
        i + 1 < hits.size() ? hits[i + 1].begin : source.size();
    trace.layers.push_back(TraceLayer{
        hit.kind,
        std::string(source.substr(hit.end, text_end - hit.end)),
        ByteSpan{hit.begin, text_end},
    });
  }
  return trace;
}

int FormatReward(const ReasoningTrace& trace) {
  if (trace.layers.size() != kNumLayers) return 0;
  for (std::size_t i = 0; i < kNumLayers; ++i) {
    if (trace.layers[i].kind != kAllLayers[i]) return 0;
  }
  return 1;
}

bool ContainsLayerTag(std::string_view text) {
  for (std::size_t pos = text.find('<'); pos != std::string_view::npos;
       pos = text.find('<', pos + 1)) {
    if (MatchTag(text, pos)) return true;
  }
  return false;
}

std::string RenderTrace(const ReasoningTrace& trace) {
  std::string out;
  for (const TraceLayer& layer : trace.layers) {
    out += '<';
    out += LayerName(layer.kind);
    out += '>';
    out += layer.text;
  }
  return out;
}

}  // namespace tomscore
