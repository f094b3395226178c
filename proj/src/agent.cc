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

#include "racko/agent.h"

#include <fstream>
#include <sstream>

namespace racko {

std::vector<ActionContext> EnumerateContexts(const GameState& state) {
  const ActionList actions = state.LegalActions();
  const Rack& hand = state.rack(state.to_move());
  const Card discard_top = state.DiscardTop();
  const std::optional<Card> deck_top = state.PeekDeckTop();

  std::vector<ActionContext> contexts;
  contexts.reserve(actions.size());
  for (const Action& a : actions) {
    switch (a.kind) {
      case ActionKind::kTakeDiscard:
        contexts.push_back(SwapContext(hand, a, discard_top));
        break;
      case ActionKind::kTakeDeck:
        contexts.push_back(SwapContext(hand, a, *deck_top));
        break;
      case ActionKind::kPass:
        contexts.push_back(PassContext(hand));
        break;
    }
  }
  return contexts;
}

namespace {

Action DefaultAction(const GameState& state) {
  const ActionList actions = state.LegalActions();
  return actions.Contains(Action::Pass()) ? Action::Pass() : actions[0];
}

bool InBaselineInterval(Card card, int slot) {
  return card / kBaselineWidth == slot;
}

}  // namespace

Action ScriptDecide(const Script& script, const GameState& state, UsageCounters& counters) {
  if (counters.size() != script.rules.size()) {
    throw ContractViolation("usage counters do not match the script's rule count");
  }
  const std::vector<ActionContext> contexts = EnumerateContexts(state);
  for (std::size_t r = 0; r < script.rules.size(); ++r) {
    for (const ActionContext& ctx : contexts) {
      if (RuleFires(script.rules[r], ctx)) {
        ++counters[r];
        return ctx.action;
      }
    }
  }
  return DefaultAction(state);
}

Action BaselineDecide(const GameState& state) {
  const ActionList actions = state.LegalActions();
  const Rack& hand = state.rack(state.to_move());
  const Card discard_top = state.DiscardTop();
  const std::optional<Card> deck_top = state.PeekDeckTop();
  for (int slot = 0; slot < kRackSize; ++slot) {
    if (InBaselineInterval(hand[slot], slot)) continue;
    if (InBaselineInterval(discard_top, slot)) return Action::TakeDiscard(slot);
    if (deck_top && actions.Contains(Action::TakeDeck(slot)) &&
        InBaselineInterval(*deck_top, slot)) {
      return Action::TakeDeck(slot);
    }
  }
  return DefaultAction(state);
}

Action RandomDecide(const GameState& state, Rng& rng) {
  const ActionList actions = state.LegalActions();
  return actions[UniformInt(rng, 0, actions.size() - 1)];
}

PlayerSpec ParsePlayerSpec(std::string_view spec) {
  if (spec == "baseline") return BaselinePlayer{};
  if (spec == "random") return RandomPlayer{};
  constexpr std::string_view kScriptPrefix = "script:";
  if (spec.substr(0, kScriptPrefix.size()) == kScriptPrefix) {
    const std::string path(spec.substr(kScriptPrefix.size()));
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read script file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      return ParseScript(buf.str());
    } catch (const ParseError& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  throw ConfigError("unknown player '" + std::string(spec) +
                    "' (expected baseline, random or script:<path>)");
}

std::string Describe(const PlayerSpec& spec) {
  if (std::holds_alternative<BaselinePlayer>(spec)) return "baseline";
  if (std::holds_alternative<RandomPlayer>(spec)) return "random";
  return "script(" + std::to_string(std::get<Script>(spec).rules.size()) + " rules)";
}

Policy Policy::ForScript(Script script) {
  UsageCounters counters(script.rules.size(), 0);
  return Policy(ScriptPlayer{std::move(script), std::move(counters)});
}

Policy Policy::Baseline() { return Policy(BaselinePlayer{}); }

Policy Policy::Random(std::uint64_t seed) { return Policy(RandomState{Rng(seed)}); }

Policy Policy::From(const PlayerSpec& spec, std::uint64_t seed) {
  if (const auto* script = std::get_if<Script>(&spec)) return ForScript(*script);
  if (std::holds_alternative<BaselinePlayer>(spec)) return Baseline();
  return Random(seed);
}

Action Policy::Decide(const GameState& state) {
  if (auto* p = std::get_if<ScriptPlayer>(&impl_)) {
    return ScriptDecide(p->script, state, p->counters);
  }
  if (auto* r = std::get_if<RandomState>(&impl_)) return RandomDecide(state, r->rng);
  return BaselineDecide(state);
}

const UsageCounters& Policy::usage() const {
  static const UsageCounters kEmpty;
  if (const auto* p = std::get_if<ScriptPlayer>(&impl_)) return p->counters;
  return kEmpty;
}

}  // namespace racko
