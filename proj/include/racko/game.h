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

#ifndef RACKO_GAME_H_
#define RACKO_GAME_H_

// Two-player Rack'O on a 40-card deck with 5-slot racks.
//
// A player wins by holding a rack whose values strictly increase with the
// slot index. On each turn the mover either takes the face-up discard card
// into a slot, takes the deck top into a slot, or passes (the deck top is
// flipped onto the discard pile). The replaced card always goes onto the
// discard pile. The deck top is visible to the deciding policy.
//
// When the deck runs out, all discard cards except the visible top are
// reshuffled into a new deck using the state's own random stream.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "racko/random.h"

namespace racko {

using Card = int;

inline constexpr int kRackSize = 5;
inline constexpr int kNumPlayers = 2;
inline constexpr int kDefaultCardCount = 40;
inline constexpr int kDefaultTurnCap = 500;

using Rack = std::array<Card, kRackSize>;

// Raised when an operation's precondition does not hold (illegal action,
// acting on a finished game, misaligned inputs).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised for invalid configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by PlayGame when a policy returns an action that is not legal.
class PolicyFault : public std::runtime_error {
 public:
  PolicyFault(int player, const std::string& what)
      : std::runtime_error(what), player_(player) {}
  int player() const { return player_; }

 private:
  int player_;
};

// The rack size and player count are fixed by the types above; the knobs
// exist so a config can be echoed and validated. Only card_count may vary.
struct EngineConfig {
  int card_count = kDefaultCardCount;
  int rack_size = kRackSize;
  int players = kNumPlayers;
};

void Validate(const EngineConfig& config);

enum class ActionKind { kTakeDiscard, kTakeDeck, kPass };

struct Action {
  ActionKind kind = ActionKind::kPass;
  int slot = -1;  // -1 for kPass

  static constexpr Action TakeDiscard(int slot) { return {ActionKind::kTakeDiscard, slot}; }
  static constexpr Action TakeDeck(int slot) { return {ActionKind::kTakeDeck, slot}; }
  static constexpr Action Pass() { return {ActionKind::kPass, -1}; }

  bool IsSwap() const { return kind != ActionKind::kPass; }
  std::string ToString() const;

  friend bool operator==(const Action&, const Action&) = default;
};

// At most 2 * kRackSize + 1 actions are ever legal; kept inline to stay off
// the heap in the decision loop.
class ActionList {
 public:
  static constexpr int kCapacity = 2 * kRackSize + 1;

  void push_back(Action a) { items_[size_++] = a; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  const Action& operator[](int i) const { return items_[i]; }
  const Action* begin() const { return items_.data(); }
  const Action* end() const { return items_.data() + size_; }
  bool Contains(Action a) const;
  std::vector<Action> ToVector() const { return {begin(), end()}; }

 private:
  std::array<Action, kCapacity> items_{};
  int size_ = 0;
};

// True iff slot values strictly increase with the index.
bool HasRacko(const Rack& rack);

class GameState {
 public:
  // Shuffles the deck with a generator seeded from `seed`, deals kRackSize
  // cards alternately starting with player 0 (slot 0 first), then flips one
  // card onto the discard pile. Player 0 moves first.
  explicit GameState(std::uint64_t seed, EngineConfig config = {});

  // Builds an arbitrary position. Both piles are listed bottom first, so the
  // last element is the top. The random stream used for reshuffles is seeded
  // from `rng_seed`. Conservation is checked.
  static GameState FromParts(std::vector<Card> deck, std::vector<Card> discard,
                             const std::array<Rack, kNumPlayers>& racks,
                             int to_move = 0, int turn = 0,
                             std::uint64_t rng_seed = 0, EngineConfig config = {});

  // Legal moves in canonical order: TakeDiscard(0..4), TakeDeck(0..4), Pass.
  // Deck moves and Pass require a deck card (present or recyclable).
  // Throws ContractViolation on a finished game.
  ActionList LegalActions() const;
  bool IsLegal(Action action) const;

  // Applies `action` for the player to move, records a win if the mover's
  // rack is now in Rack'O order, then passes the turn. A deck emptied by the
  // move is recycled immediately. Throws ContractViolation if illegal.
  void Apply(Action action);

  // Reshuffles every discard card below the top into the deck. No-op unless
  // the deck is empty.
  void RecycleDeck();

  // The card a deck action would place: the current top, or the top after
  // the recycle that Apply would perform. Does not modify the state.
  std::optional<Card> PeekDeckTop() const;
  Card DiscardTop() const { return discard_.back(); }

  // Bottom first; back() is the top.
  const std::vector<Card>& deck() const { return deck_; }
  const std::vector<Card>& discard() const { return discard_; }
  const Rack& rack(int player) const { return racks_[player]; }
  const std::array<Rack, kNumPlayers>& racks() const { return racks_; }
  int to_move() const { return to_move_; }
  int turn() const { return turn_; }
  std::optional<int> winner() const { return winner_; }
  bool IsTerminal() const { return winner_.has_value(); }
  const EngineConfig& config() const { return config_; }

  // Every card value 0..card_count-1 appears exactly once across the piles
  // and racks.
  bool ConservesCards() const;

  // Piles, racks, mover, turn and winner; ignores the random stream.
  friend bool operator==(const GameState& a, const GameState& b) {
    return a.deck_ == b.deck_ && a.discard_ == b.discard_ && a.racks_ == b.racks_ &&
           a.to_move_ == b.to_move_ && a.turn_ == b.turn_ && a.winner_ == b.winner_;
  }

 private:
  GameState() = default;
  bool DeckAvailable() const { return !deck_.empty() || discard_.size() > 1; }

  EngineConfig config_;
  std::vector<Card> deck_;
  std::vector<Card> discard_;
  std::array<Rack, kNumPlayers> racks_{};
  int to_move_ = 0;
  int turn_ = 0;
  std::optional<int> winner_;
  Rng rng_;
};

inline GameState NewGame(std::uint64_t seed, EngineConfig config = {}) {
  return GameState(seed, config);
}

enum class Outcome { kWinP0, kWinP1, kDraw };

struct GameResult {
  Outcome outcome = Outcome::kDraw;
  int turns_played = 0;

  friend bool operator==(const GameResult&, const GameResult&) = default;
};

using DecisionFn = std::function<Action(const GameState&)>;

// Called after every applied action with the updated state, the action and
// the player who made it.
using TurnObserver = std::function<void(const GameState& after, Action action, int mover)>;

// Plays one game, player 0 first. The first player whose own move leaves
// them in Rack'O order wins; after `turn_cap` turns without a winner the game
// is a draw. Throws PolicyFault if a policy returns an illegal action.
GameResult PlayGame(const DecisionFn& policy0, const DecisionFn& policy1, std::uint64_t seed,
                    int turn_cap = kDefaultTurnCap, const EngineConfig& config = {},
                    const TurnObserver& observer = {});

// Same, continuing from `state` until its turn counter reaches `turn_cap`.
GameResult PlayFrom(GameState state, const DecisionFn& policy0, const DecisionFn& policy1,
                    int turn_cap = kDefaultTurnCap, const TurnObserver& observer = {});

}  // namespace racko

#endif  // RACKO_GAME_H_
