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

#ifndef RACKO_EVOLVE_H_
#define RACKO_EVOLVE_H_

// Generational search over scripts.
//
// Each generation every ordered pair of distinct individuals plays
// `repeats_per_seat` matches of `games_per_match` games, so every individual
// sits first in exactly half of its games. Fitness is the fraction of its
// games an individual won; draws count as games but not as wins. Rules that
// never decided a move are then pruned. The `elites` fittest individuals
// survive unchanged; the remaining slots are filled by children bred from
// tournament winners with crossover followed by mutation.
//
// Every game seed is derived from the master seed and the game's coordinates
// (generation, seats, repeat, game index), and per-game results are reduced
// in schedule order, so the thread count never changes the output.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "racko/agent.h"
#include "racko/dsl.h"
#include "racko/game.h"
#include "racko/random.h"

namespace racko {

struct MatchStats {
  int wins_p1 = 0;
  int wins_p2 = 0;
  int draws = 0;
  int games = 0;

  double rate_p1() const { return games == 0 ? 0.0 : static_cast<double>(wins_p1) / games; }
  double rate_p2() const { return games == 0 ? 0.0 : static_cast<double>(wins_p2) / games; }

  friend bool operator==(const MatchStats&, const MatchStats&) = default;
};

// Plays `games` games with `first` seated as player 0. Game g uses seed
// DeriveSeed(seed, {g}); a random player in seat s of that game draws from
// DeriveSeed(game_seed, {s}).
MatchStats Evaluation(const PlayerSpec& first, const PlayerSpec& second, int games,
                      std::uint64_t seed, int turn_cap = kDefaultTurnCap, int threads = 1);

// Two Evaluation runs, `a` first in ceil(games/2) and `b` first in the rest.
struct SeatBalancedStats {
  MatchStats a_first;
  MatchStats b_first;

  int games() const { return a_first.games + b_first.games; }
  int a_wins() const { return a_first.wins_p1 + b_first.wins_p2; }
  int b_wins() const { return a_first.wins_p2 + b_first.wins_p1; }
  int draws() const { return a_first.draws + b_first.draws; }
  double a_rate() const { return games() == 0 ? 0.0 : static_cast<double>(a_wins()) / games(); }
  double b_rate() const { return games() == 0 ? 0.0 : static_cast<double>(b_wins()) / games(); }
};

SeatBalancedStats PlaySeatBalanced(const PlayerSpec& a, const PlayerSpec& b, int games,
                                   std::uint64_t seed, int turn_cap = kDefaultTurnCap,
                                   int threads = 1);

struct Individual {
  Script script;
  double fitness = 0.0;
  UsageCounters usage;
  std::uint64_t wins = 0;
  std::uint64_t games = 0;
};

// Relative weights of the mutation operators.
struct MutationConfig {
  double replace = 1.0;
  double insert = 1.0;
  double remove = 1.0;
  double keep = 1.0;
};

struct GAConfig {
  int population_size = 10;
  int generations = 4;
  int elites = 7;
  int tournament_size = 5;
  int games_per_match = 100;
  int repeats_per_seat = 3;
  int turn_cap = kDefaultTurnCap;
  std::uint64_t seed = 0;
  GrammarConfig grammar;
  MutationConfig mutation;
  // Evaluation workers. Does not affect results.
  int threads = 1;
};

// Throws ConfigError.
void Validate(const GAConfig& cfg);

// One game of a generation's round robin: `first` and `second` index the
// population.
struct ScheduledGame {
  int first = 0;
  int second = 0;
  int repeat = 0;
  int game = 0;
  std::uint64_t seed = 0;
};

// All games of one generation in reduction order: ordered pairs (i, j), i != j,
// then repeat, then game index.
std::vector<ScheduledGame> MatchSchedule(int population_size, const GAConfig& cfg,
                                         int generation);

// Plays the generation's schedule and overwrites fitness, usage, wins and
// games of every individual. A lone individual plays nothing and gets 0.
void EvalPopulation(std::vector<Individual>& population, const GAConfig& cfg, int generation);

// The k fittest, best first; ties go to the earlier position.
std::vector<Individual> Elite(const std::vector<Individual>& population, int k);

// Samples min(t, |population|) distinct members and returns the positions
// of the two fittest among them, best first (ties to the earlier position).
std::pair<std::size_t, std::size_t> TournamentSelect(const std::vector<Individual>& population,
                                                     int t, Rng& rng);

// Child = first[0, cut_first) followed by second[cut_second, end), truncated
// to max_rules. When that is empty, one rule copied from a uniformly chosen
// parent.
Script CrossoverAt(const Script& first, const Script& second, std::size_t cut_first,
                   std::size_t cut_second, Rng& rng, const GrammarConfig& cfg);

// CrossoverAt with uniform cuts in [0, |first|] and [0, |second|].
Script Crossover(const Script& first, const Script& second, Rng& rng, const GrammarConfig& cfg);

enum class MutationOp { kReplace, kInsert, kRemove, kKeep };

// kInsert at max_rules and kRemove on a single rule leave the script as is.
Script ApplyMutation(const Script& script, MutationOp op, Rng& rng, const GrammarConfig& cfg);

// Picks one operator by MutationConfig weight and applies it.
Script Mutate(const Script& script, Rng& rng, const GrammarConfig& cfg,
              const MutationConfig& mutation = {});

// Drops rules whose count is zero. If nothing fired, keeps the first rule.
Script RemoveUnused(const Script& script, const UsageCounters& usage);

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  int population_size = 0;
  Script best_script;
};

struct EvolutionReport {
  std::vector<GenerationStats> generations;
  Script best_script;
  double best_fitness = 0.0;
};

// Everything that happened in one generation, for tracing.
struct GenerationSnapshot {
  int generation = 0;
  // Scripts as played this generation, with their fitness and usage.
  std::vector<Individual> evaluated;
  // evaluated[i].script after RemoveUnused.
  std::vector<Script> pruned;
  // Positions in `pruned` of the elites, best first.
  std::vector<std::size_t> elite_positions;
  // The population for the next generation; empty after the last one.
  std::vector<Script> next_population;
};

using GenerationObserver = std::function<void(const GenerationSnapshot&)>;

// Generation 0: population_size scripts from RandomScript, drawn from a
// stream derived from cfg.seed. Ezs starts from exactly these.
std::vector<Script> InitialPopulation(const GAConfig& cfg);

// Runs the full search. The result is the fittest individual of the final
// generation (pruned). Deterministic in cfg.seed.
EvolutionReport Ezs(const GAConfig& cfg, const GenerationObserver& observer = {});

}  // namespace racko

#endif  // RACKO_EVOLVE_H_
