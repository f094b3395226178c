// Copyright 2026 The Racko Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RACKO_DSL_H_
#define RACKO_DSL_H_

// Decision scripts: an ordered list of rules, each a conjunction of
// predicates over one candidate action.
//
// Script text format, one rule per line, conjuncts joined by " and ":
//
//   givesRacko(a)
//   hasRacko(rack)
//   isBigger(a, I)
//   isSmaller(a, I)
//   isCardBetweenNumbers(a, LO, HI, I)
//
// I is a slot in 0..4, LO and HI are card values in 0..39. Lines starting
// with '#' are comments. The parser also accepts a "DSL." prefix, free
// spacing, and a trailing "Game.getRack()" argument (with or without the
// separating comma).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "racko/game.h"
#include "racko/random.h"

namespace racko {

inline constexpr int kMinNumber = 0;
inline constexpr int kMaxNumber = kDefaultCardCount - 1;

enum class PredicateKind { kIsBigger, kIsSmaller, kGivesRacko, kHasRacko, kIsCardBetweenNumbers };
inline constexpr int kNumPredicateKinds = 5;

// Unused fields stay zero. lo/hi are stored as written.
struct Predicate {
  PredicateKind kind = PredicateKind::kGivesRacko;
  int index = 0;
  int lo = 0;
  int hi = 0;

  static constexpr Predicate IsBigger(int index) { return {PredicateKind::kIsBigger, index}; }
  static constexpr Predicate IsSmaller(int index) { return {PredicateKind::kIsSmaller, index}; }
  static constexpr Predicate GivesRacko() { return {PredicateKind::kGivesRacko}; }
  static constexpr Predicate HasRacko() { return {PredicateKind::kHasRacko}; }
  static constexpr Predicate IsCardBetweenNumbers(int lo, int hi, int index) {
    return {PredicateKind::kIsCardBetweenNumbers, index, lo, hi};
  }

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct Rule {
  std::vector<Predicate> conjuncts;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Script {
  std::vector<Rule> rules;
  std::uint64_t id = 0;

  // Compares rule lists only; the id is a label.
  friend bool operator==(const Script& a, const Script& b) { return a.rules == b.rules; }
};

// A candidate move together with the hand it would produce. For a pass,
// resulting_hand equals current_hand and there is no placement.
struct ActionContext {
  Action action;
  Rack current_hand{};
  Rack resulting_hand{};
  std::optional<Card> placed_value;
  std::optional<int> placed_slot;
};

ActionContext SwapContext(const Rack& hand, Action action, Card placed);
ActionContext PassContext(const Rack& hand);

// isBigger(i) / isSmaller(i): the action places a card in slot i and it is
// larger / smaller than the card in slot i+1 of the resulting hand. Always
// false for the last slot. givesRacko: the resulting hand is in Rack'O
// order. hasRacko: the current hand is. isCardBetweenNumbers(lo, hi, i):
// the action places a card in slot i whose value lies in the closed range
// between lo and hi, in either order. Only hasRacko can hold for a pass.
bool EvalPredicate(const Predicate& predicate, const ActionContext& ctx);

// All conjuncts hold.
bool RuleFires(const Rule& rule, const ActionContext& ctx);

struct GrammarConfig {
  int max_rules = 20;
  int max_conjuncts = 3;
  int min_initial_rules = 1;
  int max_initial_rules = 8;
  double single_conjunct_probability = 0.7;
};

void Validate(const GrammarConfig& cfg);

// Index and number fields within range.
bool IsWellFormed(const Predicate& predicate);

// Non-empty, every rule non-empty and within max_conjuncts, at most
// max_rules rules, every predicate well formed.
bool SatisfiesInvariants(const Script& script, const GrammarConfig& cfg);

// One conjunct with probability single_conjunct_probability, otherwise a
// uniform count in [2, max_conjuncts]. Predicate kinds, slots and numbers
// are uniform.
Rule RandomRule(Rng& rng, const GrammarConfig& cfg);

// Rule count uniform in [min_initial_rules, max_initial_rules], clipped to
// max_rules.
Script RandomScript(Rng& rng, const GrammarConfig& cfg);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Throws ParseError (with the 1-based line) on unknown names, out-of-range
// values, malformed calls, or a script with no rules.
Script ParseScript(std::string_view text);

// Canonical form, one rule per line, each line ending in '\n'.
std::string SerializeScript(const Script& script);
std::string ToString(const Predicate& predicate);
std::string ToString(const Rule& rule);

}  // namespace racko

#endif  // RACKO_DSL_H_
