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

#include "tomscore/error.h"

#include <utility>

#include <fmt/core.h>

namespace tomscore {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateLayer: return "DuplicateLayer";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kLayerMismatch: return "LayerMismatch";
    case ErrorCode::kInvalidN: return "InvalidN";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kInvalidSample: return "InvalidSample";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kAtomParseError: return "AtomParseError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownExample: return "UnknownExample";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kJudgeUnavailable: return "JudgeUnavailable";
    case ErrorCode::kJudgeMalformedReply: return "JudgeMalformedReply";
    case ErrorCode::kExtractorUnavailable: return "ExtractorUnavailable";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(std::size_t position, const std::string& message)
    : Error(ErrorCode::kSyntaxError,
            fmt::format("syntax error at {}: {}", position, message)),
      position_(position),
      detail_(message) {}

DatasetError::DatasetError(ErrorCode code, std::size_t line, std::string field,
                           const std::string& message)
    : Error(code, fmt::format("line {}: {}: {}", line, field, message)),
      line_(line),
      field_(std::move(field)) {}

}  // namespace tomscore
