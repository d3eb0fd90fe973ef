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

#include "tomscore/extractor.h"

#include <cstdlib>
#include <utility>

#include <fmt/core.h>
#include <nlohmann/json.hpp>

#include "tomscore/error.h"
#include "tomscore/http_client.h"

namespace tomscore {
namespace {

std::string EnvOr(const std::string& name, std::string fallback) {
  const char* v = std::getenv(name.c_str());
  return v != nullptr && *v != '\0' ? std::string(v) : std::move(fallback);
}

constexpr std::string_view kMentalTable =
    "Belief:\n"
    "  attribute_belief(agent, content)   content: searching(object); "
    "human_believes(object_on(location)); object_on(location)\n"
    "  hold_true_belief(agent, content)   content: object_on(location)\n"
    "  lack_belief(agent, content)        content: object_on(location)\n"
    "  know(agent, content)               content: object_on(location)\n"
    "  unknow(agent, content)             content: object_on(location)\n"
    "Desire:\n"
    "  attribute_desire(agent, content)   content: assist(human, find(object)); "
    "assist(human, move(object))\n"
    "Intention:\n"
    "  form_intention(agent, content)     content: fetch(object, from=location1, "
    "to=location2)\n"
    "Decision:\n"
    "  resolve_misbelief(agent, content)  content: belief_conflict(human, "
    "object_location)\n"
    "  make_decision(agent, content)      content: fetch(object, from=location1, "
    "to=location2)\n";

}  // namespace

HttpChatClient::HttpChatClient(std::string endpoint, std::string api_key,
                               std::string model, std::chrono::seconds timeout)
    : endpoint_(std::move(endpoint)),
      api_key_(std::move(api_key)),
      model_(std::move(model)),
      timeout_(timeout) {
  SplitUrl(endpoint_);
}

std::unique_ptr<HttpChatClient> HttpChatClient::FromEnvironment(
    std::string_view prefix, std::string default_model) {
  const std::string p(prefix);
  const std::string endpoint = EnvOr(p + "_ENDPOINT", "");
  if (endpoint.empty()) return nullptr;
  return std::make_unique<HttpChatClient>(endpoint, EnvOr(p + "_API_KEY", ""),
                                          EnvOr(p + "_MODEL", std::move(default_model)));
}

std::string HttpChatClient::Complete(const std::string& prompt) const {
  const nlohmann::json request = {
      {"model", model_},
      {"temperature", 0},
      {"messages", {{{"role", "user"}, {"content", prompt}}}},
  };
  HttpHeaders headers;
  if (!api_key_.empty()) headers.emplace_back("Authorization", "Bearer " + api_key_);
  const std::string body = PostJson(endpoint_, request.dump(), headers, timeout_);

  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kIoError,
                fmt::format("unexpected chat-completions reply: {}", e.what()));
  }
}

AtomicSequence DslExtractor::Extract(std::string_view raw_layer_text, LayerKind layer,
                                     const ParseOptions& options) const {
  return ParseAtomic(raw_layer_text, layer, options);
}

RemoteLlmExtractor::RemoteLlmExtractor(std::shared_ptr<const ChatClient> client)
    : client_(std::move(client)) {}

AtomicSequence RemoteLlmExtractor::Extract(std::string_view raw_layer_text,
                                           LayerKind layer,
                                           const ParseOptions& options) const {
  std::string reply;
  try {
    reply = client_->Complete(AtomicExtractionPrompt(layer, raw_layer_text));
  } catch (const Error& e) {
    throw Error(ErrorCode::kExtractorUnavailable, e.what());
  }
  return ParseAtomic(StripCodeFence(reply), layer, options);
}

std::string AtomicExtractionPrompt(LayerKind layer, std::string_view text) {
  std::string prompt = fmt::format(
      "Convert the <{0}> section of a robot's reasoning into a sequence of "
      "atomic actions.\n"
      "Output only the atomic actions, comma separated, in the order they "
      "occur. Use lowercase tokens and underscores instead of spaces.\n\n",
      LayerName(layer));
  if (IsMentalLayer(layer)) {
    prompt +=
        "Each item is predicate(agent, content). The agent is the human's name "
        "or identifier, or 'robot' for the embodied agent itself. Allowed "
        "predicates and content formats:\n";
    prompt += kMentalTable;
  } else {
    prompt += "Allowed templates:\n";
    if (layer == LayerKind::kPerception) {
      prompt +=
          "  action(character, object)\n"
          "  action(character, object, from=location1, to=location2)\n"
          "  action(character, location)\n"
          "  action(character)\n"
          "character is the human identifier (e.g. char0, char1 or a name).\n";
    } else {
      prompt +=
          "  action(object)\n"
          "  action(object, from=location1, to=location2)\n"
          "  action(location)\n"
          "  action()\n"
          "These are the robot's own actions; never include a character "
          "argument for the actor.\n";
    }
    prompt += "Verbs: ";
    const auto& verbs = VerbSet();
    for (std::size_t i = 0; i < verbs.size(); ++i) {
      if (i > 0) prompt += ", ";
      prompt += verbs[i];
    }
    prompt += '\n';
  }
  prompt += fmt::format("\nText:\n{}\n", text);
  return prompt;
}

std::string StripCodeFence(std::string_view reply) {
  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return std::string_view();
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };
  std::string_view s = trim(reply);
  if (s.starts_with("```")) {
    const auto first_newline = s.find('\n');
    s = first_newline == std::string_view::npos ? std::string_view()
                                                : s.substr(first_newline + 1);
    if (const auto fence = s.rfind("```"); fence != std::string_view::npos) {
      s = s.substr(0, fence);
    }
    s = trim(s);
  }
  return std::string(s);
}

}  // namespace tomscore
