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

#ifndef TOMSCORE_ATOMIC_DSL_H_
#define TOMSCORE_ATOMIC_DSL_H_

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tomscore/layer.h"

namespace tomscore {

// Deepest accepted argument nesting, e.g. human_believes(object_on(table))
// counts 2.
inline constexpr int kMaxTermDepth = 4;

// A token or a functor applied to arguments. `keyword` is set for arguments
// written as `key=value` (e.g. from=table inside fetch(...)).
struct Term {
  std::string name;
  std::vector<Term> args;
  bool compound = false;  // Written with parentheses, even if empty.
  std::string keyword;

  static Term Atom(std::string name) { return Term{std::move(name), {}, false, {}}; }
  static Term Compound(std::string functor, std::vector<Term> args) {
    return Term{std::move(functor), std::move(args), true, {}};
  }

  bool operator==(const Term&) const = default;
};

// Who owns an action or mental state.
struct Perspective {
  enum class Kind { kHuman, kRobot };

  Kind kind = Kind::kRobot;
  std::string human_id;  // Empty for kRobot.

  static Perspective Robot() { return {}; }
  static Perspective Human(std::string id) { return {Kind::kHuman, std::move(id)}; }
  bool is_robot() const { return kind == Kind::kRobot; }

  bool operator==(const Perspective&) const = default;
};

struct AtomicAction {
  std::string verb;
  Perspective perspective;
  std::vector<Term> args;
  std::optional<Term> from_loc;
  std::optional<Term> to_loc;

  bool operator==(const AtomicAction&) const = default;
};

enum class MentalPredicateKind {
  kAttributeBelief,
  kHoldTrueBelief,
  kLackBelief,
  kKnow,
  kUnknow,
  kAttributeDesire,
  kFormIntention,
  kResolveMisbelief,
  kMakeDecision,
};

inline constexpr std::size_t kNumMentalPredicates = 9;

std::string_view MentalPredicateName(MentalPredicateKind kind);
std::optional<MentalPredicateKind> MentalPredicateFromName(std::string_view name);

// The layer the atomic action table lists the predicate under.
LayerKind MentalPredicateLayer(MentalPredicateKind kind);

struct MentalPredicate {
  MentalPredicateKind kind;
  Perspective agent;
  Term content;

  bool operator==(const MentalPredicate&) const = default;
};

using AtomicItem = std::variant<AtomicAction, MentalPredicate>;

struct AtomicSequence {
  LayerKind layer = LayerKind::kAction;
  std::vector<AtomicItem> items;

  bool operator==(const AtomicSequence&) const = default;
};

// Verb aliases applied during canonicalization. Immutable once built.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(std::map<std::string, std::string> aliases);

  // pick_up -> pick.
  static const AliasTable& Default();

  std::string_view Resolve(std::string_view verb) const;
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return aliases_;
  }

 private:
  std::map<std::string, std::string, std::less<>> aliases_;
};

struct ParseOptions {
  const AliasTable* aliases = &AliasTable::Default();
  // Character names (any case) bound as human perspective when they lead a
  // Perception item. Tokens of the form char<digits> always qualify.
  std::vector<std::string> characters;
};

// Trims, collapses internal whitespace runs to '_' and lowercases ASCII.
std::string CanonicalToken(std::string_view raw);

// Parses a comma/newline separated list such as
// "walk(fridge), open(fridge), pick(apple)". The result is canonicalized.
//
// Throws SyntaxError for malformed input and Error(kLayerMismatch) when a
// mental predicate appears in Perception/Action or a physical action in a
// mental layer.
AtomicSequence ParseAtomic(std::string_view text, LayerKind layer,
                           const ParseOptions& options = {});

AtomicSequence Canonicalize(const AtomicSequence& seq,
                            const AliasTable& aliases = AliasTable::Default());

bool AtomsEqual(const AtomicItem& a, const AtomicItem& b);

struct VocabularyWarning {
  std::size_t index;  // Item position in the sequence.
  std::string message;
};

std::vector<VocabularyWarning> ValidateVocabulary(const AtomicSequence& seq);

// Registered executable verbs.
const std::array<std::string_view, 25>& VerbSet();

std::string RenderTerm(const Term& term);
std::string RenderItem(const AtomicItem& item, LayerKind layer);
// Canonical serializer; items joined by ", ".
std::string Render(const AtomicSequence& seq);

}  // namespace tomscore

#endif  // TOMSCORE_ATOMIC_DSL_H_
