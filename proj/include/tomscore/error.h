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

#ifndef TOMSCORE_ERROR_H_
#define TOMSCORE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tomscore {

enum class ErrorCode {
  kDuplicateLayer,
  kSyntaxError,
  kLayerMismatch,
  kInvalidN,
  kEmptyReference,
  kEmptyGroup,
  kInvalidSample,
  kSchemaError,
  kAtomParseError,
  kDuplicateId,
  kUnknownExample,
  kConfigError,
  kIoError,
  kJudgeUnavailable,
  kJudgeMalformedReply,
  kExtractorUnavailable,
};

// Stable wire name, e.g. "EmptyGroup".
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the atomic DSL parser. `position` is a byte offset into the
// parsed text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message);

  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t position_;
  std::string detail_;
};

// Raised while loading JSONL files. `line` is 1-based.
class DatasetError : public Error {
 public:
  DatasetError(ErrorCode code, std::size_t line, std::string field,
               const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace tomscore

#endif  // TOMSCORE_ERROR_H_
