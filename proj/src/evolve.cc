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

#include "racko/evolve.h"

#include <algorithm>
#include <numeric>

#include "racko/parallel.h"

namespace racko {

namespace {

// Leading coordinate of every derived seed, so the streams never collide.
enum SeedDomain : std::uint64_t {
  kInitialPopulation = 1,
  kBreeding = 2,
  kRoundRobin = 3,
};

}  // namespace

MatchStats Evaluation(const PlayerSpec& first, const PlayerSpec& second, int games,
                      std::uint64_t seed, int turn_cap, int threads) {
  if (games < 1) throw ContractViolation("Evaluation needs at least one game");
  std::vector<Outcome> outcomes(games);
  ParallelFor(static_cast<std::size_t>(games), threads, [&](std::size_t g) {
    const std::uint64_t game_seed = DeriveSeed(seed, {g});
    Policy p0 = Policy::From(first, DeriveSeed(game_seed, {0}));
    Policy p1 = Policy::From(second, DeriveSeed(game_seed, {1}));
    outcomes[g] = PlayGame(p0.AsDecisionFn(), p1.AsDecisionFn(), game_seed, turn_cap).outcome;
  });
  MatchStats stats;
  stats.games = games;
  for (Outcome o : outcomes) {
    switch (o) {
      case Outcome::kWinP0: ++stats.wins_p1; break;
      case Outcome::kWinP1: ++stats.wins_p2; break;
      case Outcome::kDraw: ++stats.draws; break;
    }
  }
  return stats;
}

SeatBalancedStats PlaySeatBalanced(const PlayerSpec& a, const PlayerSpec& b, int games,
                                   std::uint64_t seed, int turn_cap, int threads) {
  if (games < 1) throw ContractViolation("need at least one game");
  SeatBalancedStats stats;
  const int a_first_games = (games + 1) / 2;
  const int b_first_games = games / 2;
  stats.a_first = Evaluation(a, b, a_first_games, DeriveSeed(seed, {0}), turn_cap, threads);
  if (b_first_games > 0) {
    stats.b_first = Evaluation(b, a, b_first_games, DeriveSeed(seed, {1}), turn_cap, threads);
  }
  return stats;
}

void Validate(const GAConfig& cfg) {
  const int p = cfg.population_size;
  if (p < 1) throw ConfigError("population_size must be >= 1");
  if (cfg.generations < 1) throw ConfigError("generations must be >= 1");
  if (cfg.elites < 1 || cfg.elites > p) throw ConfigError("elites must lie in [1, population_size]");
  if (cfg.tournament_size < 2 || cfg.tournament_size > p) {
    throw ConfigError("tournament_size must lie in [2, population_size]");
  }
  if (cfg.games_per_match < 1) throw ConfigError("games_per_match must be >= 1");
  if (cfg.repeats_per_seat < 1) throw ConfigError("repeats_per_seat must be >= 1");
  if (cfg.turn_cap < 1) throw ConfigError("turn_cap must be >= 1");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  const MutationConfig& m = cfg.mutation;
  for (double w : {m.replace, m.insert, m.remove, m.keep}) {
    if (!(w >= 0.0)) throw ConfigError("mutation weights must be non-negative");
  }
  if (m.replace + m.insert + m.remove + m.keep <= 0.0) {
    throw ConfigError("at least one mutation weight must be positive");
  }
  Validate(cfg.grammar);
}

std::vector<ScheduledGame> MatchSchedule(int population_size, const GAConfig& cfg,
                                         int generation) {
  std::vector<ScheduledGame> schedule;
  if (population_size < 2) return schedule;
  schedule.reserve(static_cast<std::size_t>(population_size) * (population_size - 1) *
                   cfg.repeats_per_seat * cfg.games_per_match);
  for (int i = 0; i < population_size; ++i) {
    for (int j = 0; j < population_size; ++j) {
      if (i == j) continue;
      for (int r = 0; r < cfg.repeats_per_seat; ++r) {
        for (int g = 0; g < cfg.games_per_match; ++g) {
          const std::uint64_t seed =
              DeriveSeed(cfg.seed, {kRoundRobin, static_cast<std::uint64_t>(generation),
                                    static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j),
                                    static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(g)});
          schedule.push_back({i, j, r, g, seed});
        }
      }
    }
  }
  return schedule;
}

namespace {

struct PlayedGame {
  Outcome outcome = Outcome::kDraw;
  UsageCounters first_usage;
  UsageCounters second_usage;
};

void AddInto(UsageCounters& total, const UsageCounters& part) {
  for (std::size_t r = 0; r < total.size(); ++r) total[r] += part[r];
}

}  // namespace

void EvalPopulation(std::vector<Individual>& population, const GAConfig& cfg, int generation) {
  if (population.empty()) throw ContractViolation("empty population");
  for (Individual& ind : population) {
    ind.usage.assign(ind.script.rules.size(), 0);
    ind.wins = 0;
    ind.games = 0;
    ind.fitness = 0.0;
  }
  const std::vector<ScheduledGame> schedule =
      MatchSchedule(static_cast<int>(population.size()), cfg, generation);
  std::vector<PlayedGame> played(schedule.size());
  ParallelFor(schedule.size(), cfg.threads, [&](std::size_t k) {
    const ScheduledGame& sg = schedule[k];
    Policy p0 = Policy::ForScript(population[sg.first].script);
    Policy p1 = Policy::ForScript(population[sg.second].script);
    played[k].outcome =
        PlayGame(p0.AsDecisionFn(), p1.AsDecisionFn(), sg.seed, cfg.turn_cap).outcome;
    played[k].first_usage = p0.usage();
    played[k].second_usage = p1.usage();
  });
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    Individual& a = population[schedule[k].first];
    Individual& b = population[schedule[k].second];
    ++a.games;
    ++b.games;
    if (played[k].outcome == Outcome::kWinP0) ++a.wins;
    if (played[k].outcome == Outcome::kWinP1) ++b.wins;
    AddInto(a.usage, played[k].first_usage);
    AddInto(b.usage, played[k].second_usage);
  }
  for (Individual& ind : population) {
    ind.fitness = ind.games == 0 ? 0.0 : static_cast<double>(ind.wins) / ind.games;
  }
}

namespace {

// Positions sorted by fitness, best first, stable on ties.
std::vector<std::size_t> RankPositions(const std::vector<Individual>& population,
                                       std::vector<std::size_t> positions) {
  std::stable_sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) {
    if (population[a].fitness != population[b].fitness) {
      return population[a].fitness > population[b].fitness;
    }
    return a < b;
  });
  return positions;
}

std::vector<std::size_t> ElitePositions(const std::vector<Individual>& population, int k) {
  std::vector<std::size_t> all(population.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> ranked = RankPositions(population, std::move(all));
  ranked.resize(std::min<std::size_t>(ranked.size(), std::max(k, 0)));
  return ranked;
}

}  // namespace

std::vector<Individual> Elite(const std::vector<Individual>& population, int k) {
  if (k < 1) throw ContractViolation("elite count must be >= 1");
  std::vector<Individual> out;
  for (std::size_t pos : ElitePositions(population, k)) out.push_back(population[pos]);
  return out;
}

std::pair<std::size_t, std::size_t> TournamentSelect(const std::vector<Individual>& population,
                                                     int t, Rng& rng) {
  if (population.size() < 2) throw ContractViolation("tournament needs at least two individuals");
  if (t < 2) throw ContractViolation("tournament size must be >= 2");
  const std::size_t n = population.size();
  const std::size_t take = std::min<std::size_t>(n, static_cast<std::size_t>(t));
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  // Partial Fisher-Yates: the first `take` entries are a uniform sample.
  for (std::size_t i = 0; i < take; ++i) {
    const auto j = static_cast<std::size_t>(UniformInt(rng, static_cast<int>(i), static_cast<int>(n) - 1));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  const std::vector<std::size_t> ranked = RankPositions(population, std::move(pool));
  return {ranked[0], ranked[1]};
}

Script CrossoverAt(const Script& first, const Script& second, std::size_t cut_first,
                   std::size_t cut_second, Rng& rng, const GrammarConfig& cfg) {
  if (cut_first > first.rules.size() || cut_second > second.rules.size()) {
    throw ContractViolation("crossover cut out of range");
  }
  Script child;
  child.rules.assign(first.rules.begin(), first.rules.begin() + cut_first);
  child.rules.insert(child.rules.end(), second.rules.begin() + cut_second, second.rules.end());
  if (child.rules.empty()) {
    const Script& donor = UniformInt(rng, 0, 1) == 0 ? first : second;
    if (donor.rules.empty()) throw ContractViolation("crossover parent has no rules");
    child.rules.push_back(donor.rules[UniformInt(rng, 0, static_cast<int>(donor.rules.size()) - 1)]);
  }
  if (static_cast<int>(child.rules.size()) > cfg.max_rules) child.rules.resize(cfg.max_rules);
  return child;
}

Script Crossover(const Script& first, const Script& second, Rng& rng, const GrammarConfig& cfg) {
  const auto cut_first = static_cast<std::size_t>(UniformInt(rng, 0, static_cast<int>(first.rules.size())));
  const auto cut_second = static_cast<std::size_t>(UniformInt(rng, 0, static_cast<int>(second.rules.size())));
  return CrossoverAt(first, second, cut_first, cut_second, rng, cfg);
}

Script ApplyMutation(const Script& script, MutationOp op, Rng& rng, const GrammarConfig& cfg) {
  Script out = script;
  const int n = static_cast<int>(out.rules.size());
  switch (op) {
    case MutationOp::kReplace:
      if (n > 0) out.rules[UniformInt(rng, 0, n - 1)] = RandomRule(rng, cfg);
      break;
    case MutationOp::kInsert:
      if (n < cfg.max_rules) {
        const int at = UniformInt(rng, 0, n);
        out.rules.insert(out.rules.begin() + at, RandomRule(rng, cfg));
      }
      break;
    case MutationOp::kRemove:
      if (n > 1) out.rules.erase(out.rules.begin() + UniformInt(rng, 0, n - 1));
      break;
    case MutationOp::kKeep:
      break;
  }
  return out;
}

Script Mutate(const Script& script, Rng& rng, const GrammarConfig& cfg,
              const MutationConfig& mutation) {
  const double weights[] = {mutation.replace, mutation.insert, mutation.remove, mutation.keep};
  const double total = weights[0] + weights[1] + weights[2] + weights[3];
  double pick = UniformUnit(rng) * total;
  int op = 3;
  while (weights[op] <= 0.0) --op;  // rounding fallback: last enabled operator
  for (int i = 0; i < 4; ++i) {
    if (weights[i] > 0.0 && pick < weights[i]) {
      op = i;
      break;
    }
    pick -= weights[i];
  }
  return ApplyMutation(script, static_cast<MutationOp>(op), rng, cfg);
}

Script RemoveUnused(const Script& script, const UsageCounters& usage) {
  if (usage.size() != script.rules.size()) {
    throw ContractViolation("usage counters do not match the script's rule count");
  }
  Script out;
  out.id = script.id;
  for (std::size_t r = 0; r < script.rules.size(); ++r) {
    if (usage[r] > 0) out.rules.push_back(script.rules[r]);
  }
  if (out.rules.empty() && !script.rules.empty()) out.rules.push_back(script.rules.front());
  return out;
}

std::vector<Script> InitialPopulation(const GAConfig& cfg) {
  Rng rng(DeriveSeed(cfg.seed, {kInitialPopulation}));
  std::vector<Script> scripts(cfg.population_size);
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    scripts[i] = RandomScript(rng, cfg.grammar);
    scripts[i].id = i;
  }
  return scripts;
}

EvolutionReport Ezs(const GAConfig& cfg, const GenerationObserver& observer) {
  Validate(cfg);
  Rng breed_rng(DeriveSeed(cfg.seed, {kBreeding}));
  std::uint64_t next_id = static_cast<std::uint64_t>(cfg.population_size);

  std::vector<Individual> population(cfg.population_size);
  const std::vector<Script> initial = InitialPopulation(cfg);
  for (std::size_t i = 0; i < initial.size(); ++i) population[i].script = initial[i];

  EvolutionReport report;
  for (int gen = 0; gen < cfg.generations; ++gen) {
    EvalPopulation(population, cfg, gen);

    GenerationSnapshot snap;
    snap.generation = gen;
    if (observer) snap.evaluated = population;

    std::vector<Individual> pruned = population;
    for (Individual& ind : pruned) {
      ind.script = RemoveUnused(ind.script, ind.usage);
      ind.usage.clear();
    }

    const std::vector<std::size_t> elites = ElitePositions(pruned, cfg.elites);
    GenerationStats stats;
    stats.generation = gen;
    stats.population_size = static_cast<int>(pruned.size());
    stats.best_fitness = pruned[elites.front()].fitness;
    double sum = 0.0;
    for (const Individual& ind : pruned) sum += ind.fitness;
    stats.mean_fitness = sum / static_cast<double>(pruned.size());
    stats.best_script = pruned[elites.front()].script;
    report.generations.push_back(stats);

    const bool last = gen + 1 == cfg.generations;
    std::vector<Individual> next;
    if (!last) {
      next.reserve(cfg.population_size);
      for (std::size_t pos : elites) {
        Individual elite;
        elite.script = pruned[pos].script;
        next.push_back(std::move(elite));
      }
      while (static_cast<int>(next.size()) < cfg.population_size) {
        const auto [a, b] = TournamentSelect(pruned, cfg.tournament_size, breed_rng);
        Script child = Crossover(pruned[a].script, pruned[b].script, breed_rng, cfg.grammar);
        child = Mutate(child, breed_rng, cfg.grammar, cfg.mutation);
        child.id = next_id++;
        Individual offspring;
        offspring.script = std::move(child);
        next.push_back(std::move(offspring));
      }
    } else {
      report.best_script = stats.best_script;
      report.best_fitness = stats.best_fitness;
    }

    if (observer) {
      for (const Individual& ind : pruned) snap.pruned.push_back(ind.script);
      snap.elite_positions = elites;
      for (const Individual& ind : next) snap.next_population.push_back(ind.script);
      observer(snap);
    }
    if (!last) population = std::move(next);
  }
  return report;
}

}  // namespace racko
