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

#include "tomscore/atomic_dsl.h"

#include <algorithm>
#include <cctype>
#include <utility>

#include <fmt/core.h>

#include "tomscore/error.h"

namespace tomscore {
namespace {

constexpr std::array<std::string_view, 25> kVerbs = {
    "walk",  "turn",   "sit",       "standup",   "open",   "close", "pick",
    "place", "putin",  "putback",   "hold",      "puton",  "switchon",
    "switchoff", "lookat", "grab",  "stand",     "move",   "sleep", "read",
    "write", "watch",  "listen",    "cut",       "cook",
};

constexpr std::array<std::string_view, 4> kRobotTokens = {"robot", "self", "i",
                                                           "me"};

// Canonical spelling of the robot in rendered output.
constexpr std::string_view kRobotToken = "robot";

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

bool IsRobotToken(std::string_view token) {
  return std::find(kRobotTokens.begin(), kRobotTokens.end(), token) !=
         kRobotTokens.end();
}

bool IsCharacterPattern(std::string_view token) {
  constexpr std::string_view kPrefix = "char";
  if (token.size() <= kPrefix.size() || !token.starts_with(kPrefix)) {
    return false;
  }
  return std::all_of(token.begin() + kPrefix.size(), token.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

struct RawTerm {
  Term term;
  std::size_t position = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  // Returns items in order; each raw item is a Term whose name is the verb.
  std::vector<RawTerm> ParseList() {
    std::vector<RawTerm> items;
    while (true) {
      SkipSpace(/*newlines=*/true);
      if (AtEnd()) break;
      items.push_back(ParseTerm(0));
      SkipSpace(/*newlines=*/false);
      if (AtEnd()) break;
      const char c = text_[pos_];
      if (c != ',' && c != '\n') {
        throw SyntaxError(pos_, fmt::format("expected ',' or newline, got '{}'", c));
      }
      ++pos_;
    }
    return items;
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }

  void SkipSpace(bool newlines) {
    while (!AtEnd() && IsSpace(text_[pos_]) && (newlines || text_[pos_] != '\n')) {
      ++pos_;
    }
  }

  std::string ReadToken() {
    const std::size_t begin = pos_;
    while (!AtEnd()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' || c == '=' || c == '\n') break;
      ++pos_;
    }
    return CanonicalToken(text_.substr(begin, pos_ - begin));
  }

  RawTerm ParseTerm(int depth) {
    const bool in_args = depth > 0;
    SkipSpace(in_args);
    const std::size_t start = pos_;
    std::string token = ReadToken();
    SkipSpace(in_args);

    if (!AtEnd() && text_[pos_] == '=') {
      if (!in_args) throw SyntaxError(pos_, "keyword argument outside parentheses");
      if (token.empty()) throw SyntaxError(pos_, "empty keyword");
      ++pos_;
      RawTerm value = ParseValue(depth);
      value.term.keyword = std::move(token);
      value.position = start;
      return value;
    }
    return Finish(std::move(token), start, depth);
  }

  RawTerm ParseValue(int depth) {
    SkipSpace(true);
    const std::size_t start = pos_;
    std::string token = ReadToken();
    SkipSpace(true);
    if (!AtEnd() && text_[pos_] == '=') {
      throw SyntaxError(pos_, "nested keyword argument");
    }
    return Finish(std::move(token), start, depth);
  }

  RawTerm Finish(std::string token, std::size_t start, int depth) {
    if (AtEnd() || text_[pos_] != '(') {
      if (token.empty()) {
        throw SyntaxError(start, depth == 0 ? "empty item" : "empty argument");
      }
      return RawTerm{Term::Atom(std::move(token)), start};
    }
    if (token.empty()) throw SyntaxError(pos_, "empty functor");
    if (depth + 1 > kMaxTermDepth) {
      throw SyntaxError(pos_, fmt::format("nesting deeper than {}", kMaxTermDepth));
    }
    ++pos_;  // '('
    Term term = Term::Compound(std::move(token), {});
    SkipSpace(true);
    if (!AtEnd() && text_[pos_] == ')') {
      ++pos_;
      return RawTerm{std::move(term), start};
    }
    while (true) {
      term.args.push_back(ParseTerm(depth + 1).term);
      SkipSpace(true);
      if (AtEnd()) throw SyntaxError(pos_, "unbalanced parentheses");
      const char c = text_[pos_++];
      if (c == ')') break;
      if (c != ',') {
        throw SyntaxError(pos_ - 1, fmt::format("expected ',' or ')', got '{}'", c));
      }
    }
    return RawTerm{std::move(term), start};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Perspective AgentPerspective(std::string_view token) {
  if (IsRobotToken(token)) return Perspective::Robot();
  return Perspective::Human(std::string(token));
}

std::string AgentToken(const Perspective& p) {
  return p.is_robot() ? std::string(kRobotToken) : p.human_id;
}

MentalPredicate BuildMental(const RawTerm& raw, MentalPredicateKind kind) {
  const Term& t = raw.term;
  if (t.args.size() != 2) {
    throw SyntaxError(raw.position,
                      fmt::format("{} takes (agent, content), got {} argument(s)",
                                  t.name, t.args.size()));
  }
  const Term& agent = t.args[0];
  if (agent.compound || !agent.keyword.empty()) {
    throw SyntaxError(raw.position, "agent must be a plain token");
  }
  if (!t.args[1].keyword.empty()) {
    throw SyntaxError(raw.position, "content cannot be a keyword argument");
  }
  return MentalPredicate{kind, AgentPerspective(agent.name), t.args[1]};
}

AtomicAction BuildAction(const RawTerm& raw, LayerKind layer,
                         const ParseOptions& options) {
  AtomicAction action;
  action.verb = raw.term.name;
  std::vector<Term> positional_and_other;
  for (const Term& arg : raw.term.args) {
    if (arg.keyword == "from" || arg.keyword == "to") {
      std::optional<Term>& slot = arg.keyword == "from" ? action.from_loc : action.to_loc;
      if (slot) {
        throw SyntaxError(raw.position, fmt::format("duplicate '{}='", arg.keyword));
      }
      Term loc = arg;
      loc.keyword.clear();
      slot = std::move(loc);
    } else {
      positional_and_other.push_back(arg);
    }
  }

  if (layer == LayerKind::kPerception && !positional_and_other.empty()) {
    const Term& first = positional_and_other.front();
    if (!first.compound && first.keyword.empty()) {
      const bool listed = std::any_of(
          options.characters.begin(), options.characters.end(),
          [&](const std::string& c) { return CanonicalToken(c) == first.name; });
      if (IsRobotToken(first.name)) {
        positional_and_other.erase(positional_and_other.begin());
      } else if (listed || IsCharacterPattern(first.name)) {
        action.perspective = Perspective::Human(first.name);
        positional_and_other.erase(positional_and_other.begin());
      }
    }
  }
  action.args = std::move(positional_and_other);
  return action;
}

Term CanonicalTerm(const Term& term) {
  Term out;
  out.name = CanonicalToken(term.name);
  out.compound = term.compound;
  out.keyword = CanonicalToken(term.keyword);
  out.args.reserve(term.args.size());
  for (const Term& arg : term.args) out.args.push_back(CanonicalTerm(arg));
  return out;
}

Perspective CanonicalPerspective(const Perspective& p) {
  if (p.is_robot()) return p;
  return Perspective::Human(CanonicalToken(p.human_id));
}

}  // namespace

std::string_view MentalPredicateName(MentalPredicateKind kind) {
  switch (kind) {
    case MentalPredicateKind::kAttributeBelief: return "attribute_belief";
    case MentalPredicateKind::kHoldTrueBelief: return "hold_true_belief";
    case MentalPredicateKind::kLackBelief: return "lack_belief";
    case MentalPredicateKind::kKnow: return "know";
    case MentalPredicateKind::kUnknow: return "unknow";
    case MentalPredicateKind::kAttributeDesire: return "attribute_desire";
    case MentalPredicateKind::kFormIntention: return "form_intention";
    case MentalPredicateKind::kResolveMisbelief: return "resolve_misbelief";
    case MentalPredicateKind::kMakeDecision: return "make_decision";
  }
  return "";
}

std::optional<MentalPredicateKind> MentalPredicateFromName(std::string_view name) {
  for (std::size_t i = 0; i < kNumMentalPredicates; ++i) {
    const auto kind = static_cast<MentalPredicateKind>(i);
    if (MentalPredicateName(kind) == name) return kind;
  }
  return std::nullopt;
}

LayerKind MentalPredicateLayer(MentalPredicateKind kind) {
  switch (kind) {
    case MentalPredicateKind::kAttributeBelief:
    case MentalPredicateKind::kHoldTrueBelief:
    case MentalPredicateKind::kLackBelief:
    case MentalPredicateKind::kKnow:
    case MentalPredicateKind::kUnknow:
      return LayerKind::kBelief;
    case MentalPredicateKind::kAttributeDesire:
      return LayerKind::kDesire;
    case MentalPredicateKind::kFormIntention:
      return LayerKind::kIntention;
    case MentalPredicateKind::kResolveMisbelief:
    case MentalPredicateKind::kMakeDecision:
      return LayerKind::kDecision;
  }
  return LayerKind::kBelief;
}

AliasTable::AliasTable(std::map<std::string, std::string> aliases) {
  for (auto& [from, to] : aliases) {
    aliases_.emplace(CanonicalToken(from), CanonicalToken(to));
  }
}

const AliasTable& AliasTable::Default() {
  static const AliasTable kDefault(std::map<std::string, std::string>{{"pick_up", "pick"}});
  return kDefault;
}

std::string_view AliasTable::Resolve(std::string_view verb) const {
  auto it = aliases_.find(verb);
  return it == aliases_.end() ? verb : std::string_view(it->second);
}

std::string CanonicalToken(std::string_view raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && IsSpace(raw[begin])) ++begin;
  while (end > begin && IsSpace(raw[end - 1])) --end;
  std::string out;
  out.reserve(end - begin);
  bool in_space = false;
  for (std::size_t i = begin; i < end; ++i) {
    const char c = raw[i];
    if (IsSpace(c)) {
      in_space = true;
      continue;
    }
    if (in_space) out += '_';
    in_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

AtomicSequence ParseAtomic(std::string_view text, LayerKind layer,
                           const ParseOptions& options) {
  AtomicSequence seq;
  seq.layer = layer;
  for (const RawTerm& raw : Parser(text).ParseList()) {
    const auto mental = MentalPredicateFromName(raw.term.name);
    if (IsMentalLayer(layer)) {
      if (!mental) {
        throw Error(ErrorCode::kLayerMismatch,
                    fmt::format("'{}' at {} is not a mental predicate (layer {})",
                                raw.term.name, raw.position, LayerName(layer)));
      }
      seq.items.emplace_back(BuildMental(raw, *mental));
    } else {
      if (mental) {
        throw Error(ErrorCode::kLayerMismatch,
                    fmt::format("mental predicate '{}' at {} in layer {}",
                                raw.term.name, raw.position, LayerName(layer)));
      }
      seq.items.emplace_back(BuildAction(raw, layer, options));
    }
  }
  const AliasTable& aliases =
      options.aliases != nullptr ? *options.aliases : AliasTable::Default();
  return Canonicalize(seq, aliases);
}

AtomicSequence Canonicalize(const AtomicSequence& seq, const AliasTable& aliases) {
  AtomicSequence out;
  out.layer = seq.layer;
  out.items.reserve(seq.items.size());
  for (const AtomicItem& item : seq.items) {
    if (const auto* action = std::get_if<AtomicAction>(&item)) {
      AtomicAction a;
      a.verb = std::string(aliases.Resolve(CanonicalToken(action->verb)));
      a.perspective = CanonicalPerspective(action->perspective);
      for (const Term& arg : action->args) a.args.push_back(CanonicalTerm(arg));
      if (action->from_loc) a.from_loc = CanonicalTerm(*action->from_loc);
      if (action->to_loc) a.to_loc = CanonicalTerm(*action->to_loc);
      out.items.emplace_back(std::move(a));
    } else {
      const auto& mental = std::get<MentalPredicate>(item);
      out.items.emplace_back(MentalPredicate{
          mental.kind, CanonicalPerspective(mental.agent),
          CanonicalTerm(mental.content)});
    }
  }
  return out;
}

bool AtomsEqual(const AtomicItem& a, const AtomicItem& b) { return a == b; }

const std::array<std::string_view, 25>& VerbSet() { return kVerbs; }

std::vector<VocabularyWarning> ValidateVocabulary(const AtomicSequence& seq) {
  std::vector<VocabularyWarning> warnings;
  for (std::size_t i = 0; i < seq.items.size(); ++i) {
    if (const auto* action = std::get_if<AtomicAction>(&seq.items[i])) {
      if (std::find(kVerbs.begin(), kVerbs.end(), action->verb) == kVerbs.end()) {
        warnings.push_back(
            {i, fmt::format("'{}' is not an executable verb", action->verb)});
      }
      continue;
    }
    const auto& mental = std::get<MentalPredicate>(seq.items[i]);
    const LayerKind home = MentalPredicateLayer(mental.kind);
    if (home != seq.layer) {
      warnings.push_back({i, fmt::format("'{}' belongs to layer {}, found in {}",
                                         MentalPredicateName(mental.kind),
                                         LayerName(home), LayerName(seq.layer))});
    }
    if (mental.kind == MentalPredicateKind::kAttributeDesire &&
        mental.content.name != "assist") {
      warnings.push_back(
          {i, fmt::format("attribute_desire content should be assist(...), got '{}'",
                          mental.content.name)});
    }
  }
  return warnings;
}

std::string RenderTerm(const Term& term) {
  std::string out;
  if (!term.keyword.empty()) {
    out += term.keyword;
    out += '=';
  }
  out += term.name;
  if (term.compound) {
    out += '(';
    for (std::size_t i = 0; i < term.args.size(); ++i) {
      if (i > 0) out += ", ";
      out += RenderTerm(term.args[i]);
    }
    out += ')';
  }
  return out;
}

std::string RenderItem(const AtomicItem& item, LayerKind layer) {
  std::vector<std::string> parts;
  std::string head;
  if (const auto* action = std::get_if<AtomicAction>(&item)) {
    head = action->verb;
    if (layer == LayerKind::kPerception) {
      parts.push_back(AgentToken(action->perspective));
    }
    for (const Term& arg : action->args) parts.push_back(RenderTerm(arg));
    if (action->from_loc) parts.push_back("from=" + RenderTerm(*action->from_loc));
    if (action->to_loc) parts.push_back("to=" + RenderTerm(*action->to_loc));
  } else {
    const auto& mental = std::get<MentalPredicate>(item);
    head = std::string(MentalPredicateName(mental.kind));
    parts.push_back(AgentToken(mental.agent));
    parts.push_back(RenderTerm(mental.content));
  }
  std::string out = head + '(';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ", ";
    out += parts[i];
  }
  out += ')';
  return out;
}

std::string Render(const AtomicSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.items.size(); ++i) {
    if (i > 0) out += ", ";
    out += RenderItem(seq.items[i], seq.layer);
  }
  return out;
}

}  // namespace tomscore
