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

#ifndef TOMSCORE_JUDGE_H_
#define TOMSCORE_JUDGE_H_

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

#include "tomscore/extractor.h"
#include "tomscore/hierarchy_parser.h"

namespace tomscore {

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};  // Doubles after each failure.
  std::function<void(std::chrono::milliseconds)> sleep;  // Defaults to sleep_for.
};

// Fixed prompt asking for a 0-10 BDI and perspective consistency score of
// the trace.
std::string BpcPrompt(const ReasoningTrace& trace);

// Extracts the first number in `reply`. Throws Error(kJudgeMalformedReply)
// when there is none or it falls outside [0, 10].
double ParseJudgeScore(std::string_view reply);

// Sends the trace to `judge`. Transport failures are retried with
// exponential backoff; after the last attempt Error(kJudgeUnavailable) is
// thrown. Malformed replies are not retried.
double JudgeBpc(const ReasoningTrace& trace, const ChatClient& judge,
                const RetryPolicy& retry = {});

}  // namespace tomscore

#endif  // TOMSCORE_JUDGE_H_
