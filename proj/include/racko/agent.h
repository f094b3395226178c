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

#ifndef RACKO_AGENT_H_
#define RACKO_AGENT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "racko/dsl.h"
#include "racko/game.h"
#include "racko/random.h"

namespace racko {

// Per-rule fire counts, aligned with Script::rules.
using UsageCounters = std::vector<std::uint64_t>;

// One context per legal action, in LegalActions() order. Deck contexts use
// the visible deck top.
std::vector<ActionContext> EnumerateContexts(const GameState& state);

// Rules are tried in script order; for each rule the contexts are tried in
// canonical order. The first (rule, context) pair that fires decides the
// move and bumps that rule's counter. With nothing firing the script passes,
// or takes the first legal action when passing is not allowed.
Action ScriptDecide(const Script& script, const GameState& state, UsageCounters& counters);

// Hand-written reference player. Slot i wants a card in
// [kBaselineWidth * i, kBaselineWidth * i + kBaselineWidth - 1]. Slots are
// scanned low to high; the first slot whose card is outside its interval and
// for which the discard top (checked first) or the deck top falls inside the
// interval receives that card. Otherwise pass.
inline constexpr int kBaselineWidth = kDefaultCardCount / kRackSize;
Action BaselineDecide(const GameState& state);

// Uniform over LegalActions().
Action RandomDecide(const GameState& state, Rng& rng);

// Static description of a player; instantiated per game with MakePolicy.
struct BaselinePlayer {
  friend bool operator==(const BaselinePlayer&, const BaselinePlayer&) = default;
};
struct RandomPlayer {
  friend bool operator==(const RandomPlayer&, const RandomPlayer&) = default;
};
using PlayerSpec = std::variant<Script, BaselinePlayer, RandomPlayer>;

// Accepts "baseline", "random" or "script:<path>" (the file is read and
// parsed). Throws ConfigError for unknown specifiers, unreadable files and
// malformed scripts.
PlayerSpec ParsePlayerSpec(std::string_view spec);
std::string Describe(const PlayerSpec& spec);

// A stateful player for one game: script players own their usage counters,
// random players own their generator.
class Policy {
 public:
  static Policy ForScript(Script script);
  static Policy Baseline();
  static Policy Random(std::uint64_t seed);
  static Policy From(const PlayerSpec& spec, std::uint64_t seed);

  Action Decide(const GameState& state);

  // Empty for non-script players.
  const UsageCounters& usage() const;

  // The returned function refers to *this.
  DecisionFn AsDecisionFn() {
    return [this](const GameState& s) { return Decide(s); };
  }

 private:
  struct ScriptPlayer {
    Script script;
    UsageCounters counters;
  };
  struct RandomState {
    Rng rng;
  };
  using Impl = std::variant<ScriptPlayer, BaselinePlayer, RandomState>;

  explicit Policy(Impl impl) : impl_(std::move(impl)) {}

  Impl impl_;
};

}  // namespace racko

#endif  // RACKO_AGENT_H_
