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

#include "racko/harness.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

namespace racko {

namespace fs = std::filesystem;
using nlohmann::json;

GAConfig PresetConfig(std::string_view name) {
  GAConfig cfg;
  cfg.games_per_match = 100;
  cfg.repeats_per_seat = 3;
  if (name == "case1") {
    cfg.population_size = 10, cfg.generations = 4, cfg.elites = 7, cfg.tournament_size = 5;
  } else if (name == "case2") {
    cfg.population_size = 20, cfg.generations = 6, cfg.elites = 7, cfg.tournament_size = 7;
  } else if (name == "case3") {
    cfg.population_size = 30, cfg.generations = 8, cfg.elites = 10, cfg.tournament_size = 10;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected case1, case2 or case3)");
  }
  return cfg;
}

int ThreadsFromEnv() {
  if (const char* env = std::getenv("RACKO_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string Fraction(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  return buf;
}

json GrammarJson(const GrammarConfig& g) {
  return {{"max_rules", g.max_rules},
          {"max_conjuncts", g.max_conjuncts},
          {"min_initial_rules", g.min_initial_rules},
          {"max_initial_rules", g.max_initial_rules},
          {"single_conjunct_probability", g.single_conjunct_probability}};
}

json MutationJson(const MutationConfig& m) {
  return {{"replace", m.replace}, {"insert", m.insert}, {"remove", m.remove}, {"keep", m.keep}};
}

template <typename T>
void ReadField(const json& obj, const std::string& key, T& out) {
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field '" + key + "' has the wrong type");
  }
}

void WriteFileAtomically(const fs::path& path, const std::string& contents) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string RunConfigJson(const RunConfig& run) {
  const GAConfig& ga = run.ga;
  json j = {{"population_size", ga.population_size},
            {"generations", ga.generations},
            {"elites", ga.elites},
            {"tournament_size", ga.tournament_size},
            {"games_per_match", ga.games_per_match},
            {"repeats_per_seat", ga.repeats_per_seat},
            {"turn_cap", ga.turn_cap},
            {"seed", ga.seed},
            {"grammar", GrammarJson(ga.grammar)},
            {"mutation", MutationJson(ga.mutation)}};
  j["preset"] = run.preset ? json(*run.preset) : json(nullptr);
  return j.dump(2) + "\n";
}

std::set<std::string> ApplyConfigJson(std::string_view json_text, GAConfig& ga) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  const std::map<std::string, int*> ints = {
      {"population_size", &ga.population_size}, {"generations", &ga.generations},
      {"elites", &ga.elites},                   {"tournament_size", &ga.tournament_size},
      {"games_per_match", &ga.games_per_match}, {"repeats_per_seat", &ga.repeats_per_seat},
      {"turn_cap", &ga.turn_cap}};
  std::set<std::string> applied;
  for (const auto& [key, value] : j.items()) {
    applied.insert(key);
    if (auto it = ints.find(key); it != ints.end()) {
      ReadField(j, key, *it->second);
    } else if (key == "seed") {
      ReadField(j, key, ga.seed);
    } else if (key == "grammar") {
      if (!value.is_object()) throw ConfigError("config field 'grammar' must be an object");
      for (const auto& [gkey, gvalue] : value.items()) {
        if (gkey == "max_rules") ReadField(value, gkey, ga.grammar.max_rules);
        else if (gkey == "max_conjuncts") ReadField(value, gkey, ga.grammar.max_conjuncts);
        else if (gkey == "min_initial_rules") ReadField(value, gkey, ga.grammar.min_initial_rules);
        else if (gkey == "max_initial_rules") ReadField(value, gkey, ga.grammar.max_initial_rules);
        else if (gkey == "single_conjunct_probability")
          ReadField(value, gkey, ga.grammar.single_conjunct_probability);
        else throw ConfigError("unknown config field 'grammar." + gkey + "'");
      }
    } else if (key == "mutation") {
      if (!value.is_object()) throw ConfigError("config field 'mutation' must be an object");
      for (const auto& [mkey, mvalue] : value.items()) {
        if (mkey == "replace") ReadField(value, mkey, ga.mutation.replace);
        else if (mkey == "insert") ReadField(value, mkey, ga.mutation.insert);
        else if (mkey == "remove") ReadField(value, mkey, ga.mutation.remove);
        else if (mkey == "keep") ReadField(value, mkey, ga.mutation.keep);
        else throw ConfigError("unknown config field 'mutation." + mkey + "'");
      }
    } else if (key == "preset") {
      // run.json echoes the preset; accept it back but ignore it.
    } else {
      throw ConfigError("unknown config field '" + key + "'");
    }
  }
  return applied;
}

std::string GenerationScriptPath(int generation) {
  return "generations/gen_" + std::to_string(generation) + ".script";
}

std::string HistoryCsv(const EvolutionReport& report) {
  std::string csv = "generation,best_fitness,mean_fitness,population_size,best_script_path\n";
  for (const GenerationStats& g : report.generations) {
    csv += std::to_string(g.generation) + "," + Fraction(g.best_fitness) + "," +
           Fraction(g.mean_fitness) + "," + std::to_string(g.population_size) + "," +
           GenerationScriptPath(g.generation) + "\n";
  }
  return csv;
}

EvolutionReport RunEvolve(const RunConfig& run, const GenerationObserver& observer) {
  Validate(run.ga);
  const fs::path out(run.out_dir);
  // Fail on an unusable output directory before the search, not after.
  fs::create_directories(out / "generations");
  EvolutionReport report = Ezs(run.ga, observer);

  for (const GenerationStats& g : report.generations) {
    WriteFileAtomically(out / GenerationScriptPath(g.generation), SerializeScript(g.best_script));
  }
  WriteFileAtomically(out / "history.csv", HistoryCsv(report));
  WriteFileAtomically(out / "run.json", RunConfigJson(run));
  WriteFileAtomically(out / "best.script", SerializeScript(report.best_script));
  return report;
}

namespace {

struct EvolveOptions {
  std::string preset;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> population, generations, elites, tournament, games, repeats, turn_cap;
};

RunConfig ResolveEvolve(const EvolveOptions& o) {
  RunConfig run;
  run.out_dir = o.out_dir;
  GAConfig file_cfg;
  std::set<std::string> in_file;
  if (!o.config_path.empty()) in_file = ApplyConfigJson(ReadFile(o.config_path), file_cfg);
  run.ga = file_cfg;

  struct Field {
    const char* name;
    int GAConfig::*member;
    const std::optional<int>* flag;
  };
  const Field fields[] = {
      {"population_size", &GAConfig::population_size, &o.population},
      {"generations", &GAConfig::generations, &o.generations},
      {"elites", &GAConfig::elites, &o.elites},
      {"tournament_size", &GAConfig::tournament_size, &o.tournament},
      {"games_per_match", &GAConfig::games_per_match, &o.games},
      {"repeats_per_seat", &GAConfig::repeats_per_seat, &o.repeats},
  };

  if (!o.preset.empty()) {
    const GAConfig preset = PresetConfig(o.preset);
    run.preset = o.preset;
    for (const Field& f : fields) {
      const int want = preset.*f.member;
      if (f.flag->has_value() && **f.flag != want) {
        throw ConfigError(std::string("flag for ") + f.name + " conflicts with preset " + o.preset);
      }
      if (in_file.count(f.name) > 0 && file_cfg.*f.member != want) {
        throw ConfigError(std::string("config field ") + f.name + " conflicts with preset " +
                          o.preset);
      }
      run.ga.*f.member = want;
    }
  }
  for (const Field& f : fields) {
    if (f.flag->has_value()) run.ga.*f.member = **f.flag;
  }
  if (o.turn_cap) run.ga.turn_cap = *o.turn_cap;
  if (o.seed) run.ga.seed = *o.seed;
  run.ga.threads = ThreadsFromEnv();
  Validate(run.ga);
  return run;
}

std::string StatsCsv(const SeatBalancedStats& s) {
  std::string csv = "seating,games,a_wins,b_wins,draws,a_rate,b_rate\n";
  auto row = [&](const std::string& name, int games, int a, int b, int d) {
    const double ar = games == 0 ? 0.0 : static_cast<double>(a) / games;
    const double br = games == 0 ? 0.0 : static_cast<double>(b) / games;
    csv += name + "," + std::to_string(games) + "," + std::to_string(a) + "," + std::to_string(b) +
           "," + std::to_string(d) + "," + Fraction(ar) + "," + Fraction(br) + "\n";
  };
  row("a_first", s.a_first.games, s.a_first.wins_p1, s.a_first.wins_p2, s.a_first.draws);
  row("b_first", s.b_first.games, s.b_first.wins_p2, s.b_first.wins_p1, s.b_first.draws);
  row("combined", s.games(), s.a_wins(), s.b_wins(), s.draws());
  return csv;
}

// Runs `fn`, mapping exceptions onto exit codes.
template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "fatal: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rack'O script evolution toolkit", "racko"};
  app.require_subcommand(1);

  EvolveOptions ev;
  CLI::App* evolve = app.add_subcommand("evolve", "Run the evolutionary search");
  evolve->add_option("--preset", ev.preset, "case1, case2 or case3");
  evolve->add_option("--config", ev.config_path, "JSON file with GAConfig fields");
  evolve->add_option("--seed", ev.seed, "Master seed");
  evolve->add_option("--out", ev.out_dir, "Output directory")->required();
  evolve->add_option("--population", ev.population);
  evolve->add_option("--generations", ev.generations);
  evolve->add_option("--elites", ev.elites);
  evolve->add_option("--tournament", ev.tournament);
  evolve->add_option("--games", ev.games, "Games per match");
  evolve->add_option("--repeats", ev.repeats, "Matches per ordered pair");
  evolve->add_option("--turn-cap", ev.turn_cap);

  std::string p1_spec, p2_spec, csv_path;
  int play_games = 1000;
  std::uint64_t play_seed = 0;
  int play_turn_cap = kDefaultTurnCap;
  CLI::App* play = app.add_subcommand("play", "Play two players against each other");
  play->add_option("p1", p1_spec, "baseline | random | script:<path>")->required();
  play->add_option("p2", p2_spec, "baseline | random | script:<path>")->required();
  play->add_option("--games", play_games, "Total games, split across both seatings")
      ->check(CLI::PositiveNumber);
  play->add_option("--seed", play_seed);
  play->add_option("--turn-cap", play_turn_cap)->check(CLI::PositiveNumber);
  play->add_option("--csv", csv_path, "Also write the table to this file");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a script and print its canonical form");
  validate->add_option("path", validate_path)->required();

  std::uint64_t gen_seed = 0;
  GrammarConfig gen_grammar;
  CLI::App* gen = app.add_subcommand("gen-random", "Print a random script");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--max-rules", gen_grammar.max_rules);
  gen->add_option("--max-conjuncts", gen_grammar.max_conjuncts);
  gen->add_option("--min-initial-rules", gen_grammar.min_initial_rules);
  gen->add_option("--max-initial-rules", gen_grammar.max_initial_rules);
  gen->add_option("--single-conjunct-probability", gen_grammar.single_conjunct_probability);

  std::vector<std::string> argv_storage = {"racko"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*evolve) {
    return Guarded(err, [&] {
      const RunConfig run = ResolveEvolve(ev);
      const EvolutionReport report = RunEvolve(run);
      out << "best fitness " << Fraction(report.best_fitness) << "\n"
          << SerializeScript(report.best_script);
      return kExitOk;
    });
  }
  if (*play) {
    return Guarded(err, [&] {
      const PlayerSpec a = ParsePlayerSpec(p1_spec);
      const PlayerSpec b = ParsePlayerSpec(p2_spec);
      const SeatBalancedStats stats =
          PlaySeatBalanced(a, b, play_games, play_seed, play_turn_cap, ThreadsFromEnv());
      const std::string csv = StatsCsv(stats);
      out << "a = " << p1_spec << ", b = " << p2_spec << "\n" << csv;
      out << "a win percentage " << Fraction(100.0 * stats.a_rate()) << "\n";
      if (!csv_path.empty()) {
        std::ofstream f(csv_path, std::ios::binary | std::ios::trunc);
        if (!f || !(f << csv)) throw std::runtime_error("cannot write " + csv_path);
      }
      return kExitOk;
    });
  }
  if (*validate) {
    return Guarded(err, [&] {
      const std::string text = ReadFile(validate_path);
      Script script;
      try {
        script = ParseScript(text);
      } catch (const ParseError& e) {
        throw ConfigError(validate_path + ": " + e.what());
      }
      out << SerializeScript(script);
      return kExitOk;
    });
  }
  return Guarded(err, [&] {
    Validate(gen_grammar);
    Rng rng(gen_seed);
    out << SerializeScript(RandomScript(rng, gen_grammar));
    return kExitOk;
  });
}

}  // namespace racko
