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

#ifndef TOMSCORE_HIERARCHY_PARSER_H_
#define TOMSCORE_HIERARCHY_PARSER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tomscore/error.h"
#include "tomscore/layer.h"

namespace tomscore {

// Byte range [begin, end) into ReasoningTrace::source. A layer's span starts
// at its opening tag and ends where its text ends, so
// source.substr(begin, end - begin) == "<Tag>" + text.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const ByteSpan&) const = default;
};

struct TraceLayer {
  LayerKind kind;
  std::string text;  // Excludes tag markers; not trimmed.
  ByteSpan span;

  bool operator==(const TraceLayer&) const = default;
};

struct ReasoningTrace {
  std::vector<TraceLayer> layers;  // In the order found in source.
  std::string source;

  // nullptr when the layer is absent.
  const TraceLayer* Find(LayerKind kind) const;
};

class DuplicateLayerError : public Error {
 public:
  explicit DuplicateLayerError(LayerKind kind);
  LayerKind kind() const { return kind_; }

 private:
  LayerKind kind_;
};

// Scans `source` for the exact-case tags <Perception> ... <Action>. A layer's
// text runs from its tag to the next recognized opening or closing tag (or
// end of input). Text outside any layer is ignored.
//
// Throws DuplicateLayerError when an opening tag repeats.
ReasoningTrace ParseTrace(std::string_view source);

// 1 iff all six layers are present in hierarchy order, else 0.
int FormatReward(const ReasoningTrace& trace);

// True when `text` contains any opening or closing hierarchy tag.
bool ContainsLayerTag(std::string_view text);

// Serializes layers as "<Tag>text" concatenated in trace order.
std::string RenderTrace(const ReasoningTrace& trace);

}  // namespace tomscore

#endif  // TOMSCORE_HIERARCHY_PARSER_H_
