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

#ifndef TOMSCORE_EXTRACTOR_H_
#define TOMSCORE_EXTRACTOR_H_

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "tomscore/atomic_dsl.h"
#include "tomscore/layer.h"

namespace tomscore {

// A text-completion backend (LLM judge or extractor). Implementations must
// be safe to call from several threads.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Throws Error(kIoError) on transport failure.
  virtual std::string Complete(const std::string& prompt) const = 0;
};

// OpenAI-compatible chat-completions endpoint. `endpoint` is the full URL,
// e.g. http://localhost:8000/v1/chat/completions.
class HttpChatClient : public ChatClient {
 public:
  HttpChatClient(std::string endpoint, std::string api_key, std::string model,
                 std::chrono::seconds timeout = std::chrono::seconds(60));
  std::string Complete(const std::string& prompt) const override;

  // Reads <prefix>_ENDPOINT, <prefix>_API_KEY and <prefix>_MODEL. Returns
  // nullptr when the endpoint variable is unset or empty.
  static std::unique_ptr<HttpChatClient> FromEnvironment(std::string_view prefix,
                                                         std::string default_model);

 private:
  std::string endpoint_;
  std::string api_key_;
  std::string model_;
  std::chrono::seconds timeout_;
};

// Turns one layer's raw text into an atomic sequence.
class Extractor {
 public:
  virtual ~Extractor() = default;
  virtual std::string name() const = 0;
  // Throws SyntaxError / Error on text it cannot convert.
  virtual AtomicSequence Extract(std::string_view raw_layer_text, LayerKind layer,
                                 const ParseOptions& options) const = 0;
};

// Parses the layer text directly as atomic DSL.
class DslExtractor : public Extractor {
 public:
  std::string name() const override { return "dsl"; }
  AtomicSequence Extract(std::string_view raw_layer_text, LayerKind layer,
                         const ParseOptions& options) const override;
};

// Asks an LLM to rewrite free text as atomic DSL, then parses the reply.
class RemoteLlmExtractor : public Extractor {
 public:
  explicit RemoteLlmExtractor(std::shared_ptr<const ChatClient> client);
  std::string name() const override { return "llm"; }
  AtomicSequence Extract(std::string_view raw_layer_text, LayerKind layer,
                         const ParseOptions& options) const override;

 private:
  std::shared_ptr<const ChatClient> client_;
};

// The in-context prompt sent to the extraction model: the atomic action
// table for `layer`, the physical templates and verb set, then the text.
std::string AtomicExtractionPrompt(LayerKind layer, std::string_view text);

// Strips surrounding whitespace and a Markdown code fence, if any.
std::string StripCodeFence(std::string_view reply);

}  // namespace tomscore

#endif  // TOMSCORE_EXTRACTOR_H_
