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

#include "racko/game.h"

#include <algorithm>
#include <numeric>
#include <span>
#include <utility>

namespace racko {

void Validate(const EngineConfig& config) {
  if (config.rack_size != kRackSize) {
    throw ConfigError("rack_size must be " + std::to_string(kRackSize));
  }
  if (config.players != kNumPlayers) {
    throw ConfigError("players must be " + std::to_string(kNumPlayers));
  }
  // Both racks and the face-up discard.
  if (config.card_count < kNumPlayers * kRackSize + 1) {
    throw ConfigError("card_count too small for the rack size");
  }
}

std::string Action::ToString() const {
  switch (kind) {
    case ActionKind::kTakeDiscard:
      return "TakeDiscard(" + std::to_string(slot) + ")";
    case ActionKind::kTakeDeck:
      return "TakeDeck(" + std::to_string(slot) + ")";
    case ActionKind::kPass:
      return "Pass";
  }
  return "?";
}

bool ActionList::Contains(Action a) const {
  return std::find(begin(), end(), a) != end();
}

bool HasRacko(const Rack& rack) {
  for (int i = 1; i < kRackSize; ++i) {
    if (rack[i - 1] >= rack[i]) return false;
  }
  return true;
}

GameState::GameState(std::uint64_t seed, EngineConfig config)
    : config_(config), rng_(seed) {
  Validate(config_);
  deck_.resize(config_.card_count);
  std::iota(deck_.begin(), deck_.end(), 0);
  Shuffle(std::span<Card>(deck_), rng_);
  for (int slot = 0; slot < kRackSize; ++slot) {
    for (int p = 0; p < kNumPlayers; ++p) {
      racks_[p][slot] = deck_.back();
      deck_.pop_back();
    }
  }
  discard_.push_back(deck_.back());
  deck_.pop_back();
}

GameState GameState::FromParts(std::vector<Card> deck, std::vector<Card> discard,
                               const std::array<Rack, kNumPlayers>& racks, int to_move,
                               int turn, std::uint64_t rng_seed, EngineConfig config) {
  Validate(config);
  if (discard.empty()) throw ContractViolation("discard pile must not be empty");
  if (to_move < 0 || to_move >= kNumPlayers) throw ContractViolation("bad player to move");
  GameState s;
  s.config_ = config;
  s.deck_ = std::move(deck);
  s.discard_ = std::move(discard);
  s.racks_ = racks;
  s.to_move_ = to_move;
  s.turn_ = turn;
  s.rng_.seed(rng_seed);
  if (!s.ConservesCards()) throw ContractViolation("cards are not a permutation of the deck");
  return s;
}

ActionList GameState::LegalActions() const {
  if (IsTerminal()) throw ContractViolation("game is over");
  ActionList actions;
  for (int slot = 0; slot < kRackSize; ++slot) actions.push_back(Action::TakeDiscard(slot));
  if (DeckAvailable()) {
    for (int slot = 0; slot < kRackSize; ++slot) actions.push_back(Action::TakeDeck(slot));
    actions.push_back(Action::Pass());
  }
  return actions;
}

bool GameState::IsLegal(Action action) const {
  if (IsTerminal()) return false;
  switch (action.kind) {
    case ActionKind::kTakeDiscard:
      return action.slot >= 0 && action.slot < kRackSize;
    case ActionKind::kTakeDeck:
      return action.slot >= 0 && action.slot < kRackSize && DeckAvailable();
    case ActionKind::kPass:
      return action.slot == -1 && DeckAvailable();
  }
  return false;
}

void GameState::Apply(Action action) {
  if (IsTerminal()) throw ContractViolation("game is over");
  if (!IsLegal(action)) throw ContractViolation("illegal action " + action.ToString());

  Rack& rack = racks_[to_move_];
  switch (action.kind) {
    case ActionKind::kTakeDiscard: {
      const Card taken = discard_.back();
      discard_.back() = rack[action.slot];
      rack[action.slot] = taken;
      break;
    }
    case ActionKind::kTakeDeck: {
      RecycleDeck();
      const Card drawn = deck_.back();
      deck_.pop_back();
      discard_.push_back(rack[action.slot]);
      rack[action.slot] = drawn;
      break;
    }
    case ActionKind::kPass:
      RecycleDeck();
      discard_.push_back(deck_.back());
      deck_.pop_back();
      break;
  }

  if (HasRacko(rack)) winner_ = to_move_;
  to_move_ = 1 - to_move_;
  ++turn_;
  RecycleDeck();
}

void GameState::RecycleDeck() {
  if (!deck_.empty() || discard_.size() <= 1) return;
  const Card top = discard_.back();
  discard_.pop_back();
  deck_.swap(discard_);
  Shuffle(std::span<Card>(deck_), rng_);
  discard_.push_back(top);
}

std::optional<Card> GameState::PeekDeckTop() const {
  if (!deck_.empty()) return deck_.back();
  if (discard_.size() <= 1) return std::nullopt;
  GameState copy = *this;
  copy.RecycleDeck();
  return copy.deck_.back();
}

bool GameState::ConservesCards() const {
  std::vector<int> seen(config_.card_count, 0);
  auto mark = [&](Card c) {
    if (c < 0 || c >= config_.card_count) return false;
    return ++seen[c] == 1;
  };
  for (Card c : deck_) {
    if (!mark(c)) return false;
  }
  for (Card c : discard_) {
    if (!mark(c)) return false;
  }
  for (const Rack& r : racks_) {
    for (Card c : r) {
      if (!mark(c)) return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; });
}

GameResult PlayGame(const DecisionFn& policy0, const DecisionFn& policy1, std::uint64_t seed,
                    int turn_cap, const EngineConfig& config, const TurnObserver& observer) {
  if (turn_cap < 1) throw ContractViolation("turn_cap must be at least 1");
  return PlayFrom(GameState(seed, config), policy0, policy1, turn_cap, observer);
}

GameResult PlayFrom(GameState state, const DecisionFn& policy0, const DecisionFn& policy1,
                    int turn_cap, const TurnObserver& observer) {
  if (turn_cap < 1) throw ContractViolation("turn_cap must be at least 1");
  if (state.IsTerminal()) throw ContractViolation("game is over");
  while (state.turn() < turn_cap) {
    const int mover = state.to_move();
    const Action action = mover == 0 ? policy0(state) : policy1(state);
    if (!state.IsLegal(action)) {
      throw PolicyFault(mover, "player " + std::to_string(mover) + " chose illegal action " +
                                   action.ToString());
    }
    state.Apply(action);
    if (observer) observer(state, action, mover);
    if (state.winner()) {
      return {mover == 0 ? Outcome::kWinP0 : Outcome::kWinP1, state.turn()};
    }
  }
  return {Outcome::kDraw, turn_cap};
}

}  // namespace racko
