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

#include "tomscore/judge.h"

#include <cctype>
#include <cstdlib>
#include <thread>

#include <fmt/core.h>

#include "tomscore/error.h"

namespace tomscore {

std::string BpcPrompt(const ReasoningTrace& trace) {
  std::string prompt =
      "You are grading the reasoning of an embodied robot assistant that "
      "watched a video of people in a home and wrote a layered analysis.\n"
      "Judge the response on three criteria:\n"
      "1. Each layer (Perception, Belief, Desire, Intention, Decision, Action) "
      "follows logically from the layer before it, with no contradictions.\n"
      "2. The reasoning as a whole is complete and precise.\n"
      "3. The reasoning is done from the robot's own perspective, keeps the "
      "robot's beliefs separate from the humans' beliefs, and the actions "
      "actually help the human characters.\n"
      "Reply with a single number from 0 to 10 and nothing else.\n\n"
      "Response:\n";
  for (const TraceLayer& layer : trace.layers) {
    prompt += fmt::format("<{}> {}\n", LayerName(layer.kind), layer.text);
  }
  return prompt;
}

double ParseJudgeScore(std::string_view reply) {
  std::size_t i = 0;
  while (i < reply.size() && !std::isdigit(static_cast<unsigned char>(reply[i]))) ++i;
  if (i == reply.size()) {
    throw Error(ErrorCode::kJudgeMalformedReply,
                fmt::format("JudgeMalformedReply: no score in '{}'", reply));
  }
  const std::string rest(reply.substr(i));
  char* end = nullptr;
  const double score = std::strtod(rest.c_str(), &end);
  if (end == rest.c_str() || !(score >= 0.0 && score <= 10.0)) {
    throw Error(ErrorCode::kJudgeMalformedReply,
                fmt::format("JudgeMalformedReply: score out of range in '{}'", reply));
  }
  return score;
}

double JudgeBpc(const ReasoningTrace& trace, const ChatClient& judge,
                const RetryPolicy& retry) {
  const std::string prompt = BpcPrompt(trace);
  auto backoff = retry.initial_backoff;
  std::string last_error = "no attempts made";
  for (int attempt = 1; attempt <= retry.attempts; ++attempt) {
    try {
      return ParseJudgeScore(judge.Complete(prompt));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kJudgeMalformedReply) throw;
      last_error = e.what();
    }
    if (attempt < retry.attempts) {
      if (retry.sleep) {
        retry.sleep(backoff);
      } else {
        std::this_thread::sleep_for(backoff);
      }
      backoff *= 2;
    }
  }
  throw Error(ErrorCode::kJudgeUnavailable,
              fmt::format("JudgeUnavailable after {} attempts: {}", retry.attempts,
                          last_error));
}

}  // namespace tomscore
