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

#include "doctest.h"
#include "oracles.h"
#include "racko/agent.h"

namespace racko {
namespace {

using testing::MultisetIsFullDeck;

// 40 cards: the given racks, `deck` (bottom first), and every other card on
// the discard pile below `discard_top`.
GameState Position(const Rack& mine, const Rack& theirs, std::vector<Card> deck,
                   Card discard_top, int to_move = 0) {
  std::vector<bool> used(kDefaultCardCount, false);
  for (Card c : mine) used[c] = true;
  for (Card c : theirs) used[c] = true;
  for (Card c : deck) used[c] = true;
  used[discard_top] = true;
  std::vector<Card> discard;
  for (Card c = 0; c < kDefaultCardCount; ++c) {
    if (!used[c]) discard.push_back(c);
  }
  discard.push_back(discard_top);
  std::array<Rack, 2> racks{};
  racks[to_move] = mine;
  racks[1 - to_move] = theirs;
  return GameState::FromParts(std::move(deck), std::move(discard), racks, to_move);
}

const DecisionFn kAlwaysPass = [](const GameState&) { return Action::Pass(); };

TEST_CASE("new game deals 5+5, flips one, leaves 29") {
  const GameState s(123);
  CHECK(s.deck().size() == 29);
  CHECK(s.discard().size() == 1);
  CHECK(s.rack(0).size() == 5);
  CHECK(s.rack(1).size() == 5);
  CHECK(s.to_move() == 0);
  CHECK(s.turn() == 0);
  CHECK(s.ConservesCards());
  CHECK(MultisetIsFullDeck(s));
}

TEST_CASE("new game is a function of the seed") {
  CHECK(GameState(77) == GameState(77));
  int differing = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    if (GameState(seed).deck() != GameState(seed + 1000).deck()) ++differing;
  }
  CHECK(differing == 50);
}

TEST_CASE("legal actions on a fresh game: 11 in canonical order") {
  const ActionList actions = GameState(5).LegalActions();
  REQUIRE(actions.size() == 11);
  for (int i = 0; i < 5; ++i) {
    CHECK(actions[i] == Action::TakeDiscard(i));
    CHECK(actions[5 + i] == Action::TakeDeck(i));
  }
  CHECK(actions[10] == Action::Pass());
}

TEST_CASE("no hidden card: only discard swaps are legal") {
  // 11-card game: racks hold ten, the discard holds the last one.
  EngineConfig small;
  small.card_count = 11;
  const GameState s = GameState::FromParts({}, {10}, {Rack{0, 1, 2, 3, 4}, Rack{5, 6, 7, 8, 9}},
                                           0, 0, 0, small);
  const ActionList actions = s.LegalActions();
  REQUIRE(actions.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(actions[i] == Action::TakeDiscard(i));
  CHECK_FALSE(s.IsLegal(Action::Pass()));
  CHECK_FALSE(s.IsLegal(Action::TakeDeck(0)));
  CHECK_FALSE(s.PeekDeckTop().has_value());
}

TEST_CASE("TakeDiscard swaps the discard top into the slot") {
  GameState s = Position({30, 2, 14, 22, 39}, {0, 1, 3, 4, 6}, {17}, 5);
  s.Apply(Action::TakeDiscard(0));
  CHECK(s.rack(0) == Rack{5, 2, 14, 22, 39});
  CHECK(s.DiscardTop() == 30);
  CHECK(s.to_move() == 1);
  CHECK(s.turn() == 1);
  CHECK(MultisetIsFullDeck(s));
}

TEST_CASE("TakeDeck places the deck top and discards the old card") {
  GameState s = Position({30, 2, 14, 22, 39}, {0, 1, 3, 4, 6}, {8, 17}, 5);
  s.Apply(Action::TakeDeck(3));
  CHECK(s.rack(0) == Rack{30, 2, 14, 17, 39});
  CHECK(s.DiscardTop() == 22);
  CHECK(s.deck() == std::vector<Card>{8});
}

TEST_CASE("Pass flips the deck top onto the discard") {
  GameState s = Position({30, 2, 14, 22, 39}, {0, 1, 3, 4, 6}, {8, 17}, 5);
  const Rack before = s.rack(0);
  s.Apply(Action::Pass());
  CHECK(s.rack(0) == before);
  CHECK(s.DiscardTop() == 17);
  CHECK(s.deck().size() == 1);
  CHECK(MultisetIsFullDeck(s));
}

TEST_CASE("illegal actions and finished games are contract violations") {
  GameState s(1);
  CHECK_THROWS_AS(s.Apply(Action::TakeDiscard(5)), ContractViolation);
  CHECK_THROWS_AS(s.Apply(Action{ActionKind::kPass, 2}), ContractViolation);

  GameState w = Position({1, 2, 3, 4, 9}, {10, 11, 12, 13, 14}, {20}, 8);
  w.Apply(Action::TakeDiscard(4));
  REQUIRE(w.winner() == 0);
  CHECK_THROWS_AS(w.LegalActions(), ContractViolation);
  CHECK_THROWS_AS(w.Apply(Action::Pass()), ContractViolation);
}

TEST_CASE("recycle keeps the discard top and reshuffles the rest") {
  // Deck empty, discard [..., a, b, c, d(top)].
  GameState s = Position({0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {}, 39);
  const std::vector<Card> below(s.discard().begin(), s.discard().end() - 1);
  s.RecycleDeck();
  CHECK(s.discard() == std::vector<Card>{39});
  std::vector<Card> deck = s.deck();
  std::sort(deck.begin(), deck.end());
  std::vector<Card> expect = below;
  std::sort(expect.begin(), expect.end());
  CHECK(deck == expect);
  CHECK(MultisetIsFullDeck(s));

  // Non-empty deck: identity.
  GameState t = Position({0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {20}, 39);
  const GameState before = t;
  t.RecycleDeck();
  CHECK(t == before);
}

TEST_CASE("recycle with a single discard card changes nothing") {
  EngineConfig small;
  small.card_count = 11;
  GameState s = GameState::FromParts({}, {10}, {Rack{0, 1, 2, 3, 4}, Rack{5, 6, 7, 8, 9}}, 0, 0,
                                     0, small);
  s.RecycleDeck();
  CHECK(s.deck().empty());
  CHECK(s.discard() == std::vector<Card>{10});
}

TEST_CASE("a move that empties the deck recycles it right away") {
  GameState s = Position({30, 2, 14, 22, 39}, {0, 1, 3, 4, 6}, {17}, 5);
  s.Apply(Action::Pass());
  CHECK(s.DiscardTop() == 17);
  CHECK(s.deck().size() == 29);
  CHECK(s.discard().size() == 1);
  CHECK(MultisetIsFullDeck(s));
}

TEST_CASE("peeking at an empty recyclable deck predicts the draw") {
  GameState s = Position({30, 2, 14, 22, 38}, {0, 1, 3, 4, 6}, {}, 5);
  const std::optional<Card> predicted = s.PeekDeckTop();
  REQUIRE(predicted.has_value());
  CHECK(s.deck().empty());
  s.Apply(Action::TakeDeck(4));
  CHECK(s.rack(0)[4] == *predicted);
}

TEST_CASE("has_racko examples") {
  CHECK(HasRacko({2, 7, 19, 25, 38}));
  CHECK_FALSE(HasRacko({5, 3, 19, 25, 38}));
  CHECK(HasRacko({0, 1, 2, 3, 4}));
}

TEST_CASE("has_racko agrees with sort-and-compare") {
  Rng rng(2024);
  for (int i = 0; i < 20000; ++i) {
    Rack r;
    for (Card& c : r) c = UniformInt(rng, 0, 39);
    CHECK(HasRacko(r) == testing::OracleHasRacko(r));
  }
}

TEST_CASE("pass-only players draw at the turn cap") {
  const GameResult r = PlayGame(kAlwaysPass, kAlwaysPass, 3, 200);
  // A dealt Rack'O would be won on the holder's first pass; seed 3 has none.
  CHECK(r.outcome == Outcome::kDraw);
  CHECK(r.turns_played == 200);
}

TEST_CASE("a completing swap wins in one turn") {
  const GameState s = Position({1, 2, 3, 4, 9}, {10, 11, 12, 13, 14}, {20, 21}, 8);
  const DecisionFn swap4 = [](const GameState&) { return Action::TakeDiscard(4); };
  const GameResult r = PlayFrom(s, swap4, kAlwaysPass, 10);
  CHECK(r.outcome == Outcome::kWinP0);
  CHECK(r.turns_played == 1);
}

TEST_CASE("a policy returning an illegal move faults with its seat") {
  const DecisionFn bad = [](const GameState&) { return Action::TakeDeck(7); };
  try {
    PlayGame(kAlwaysPass, bad, 11, 50);
    FAIL("expected PolicyFault");
  } catch (const PolicyFault& f) {
    CHECK(f.player() == 1);
  }
}

TEST_CASE("random playouts: conservation, legality, determinism, termination") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng r0(seed * 2 + 1);
    Rng r1(seed * 2 + 2);
    std::vector<Action> transcript;
    bool all_conserved = true;
    bool pass_rule_ok = true;
    auto observer = [&](const GameState& after, Action a, int) {
      transcript.push_back(a);
      all_conserved = all_conserved && MultisetIsFullDeck(after);
      if (!after.IsTerminal() && after.deck().empty() && after.discard().size() <= 1) {
        pass_rule_ok = pass_rule_ok && !after.LegalActions().Contains(Action::Pass());
      }
    };
    const DecisionFn p0 = [&](const GameState& s) { return RandomDecide(s, r0); };
    const DecisionFn p1 = [&](const GameState& s) { return RandomDecide(s, r1); };
    const GameResult first = PlayGame(p0, p1, seed, 300, {}, observer);
    CHECK(all_conserved);
    CHECK(pass_rule_ok);
    CHECK(first.turns_played <= 300);
    CHECK(first.turns_played == static_cast<int>(transcript.size()));

    const std::vector<Action> first_transcript = transcript;
    transcript.clear();
    r0.seed(seed * 2 + 1);
    r1.seed(seed * 2 + 2);
    const GameResult second = PlayGame(p0, p1, seed, 300, {}, observer);
    CHECK(first == second);
    CHECK(first_transcript == transcript);
  }
}

TEST_CASE("engine config validation") {
  EngineConfig c;
  CHECK_NOTHROW(Validate(c));
  c.rack_size = 10;
  CHECK_THROWS_AS(Validate(c), ConfigError);
  c = {};
  c.players = 4;
  CHECK_THROWS_AS(Validate(c), ConfigError);
  c = {};
  c.card_count = 10;
  CHECK_THROWS_AS(Validate(c), ConfigError);
}

}  // namespace
}  // namespace racko
