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

#ifndef RACKO_HARNESS_H_
#define RACKO_HARNESS_H_

// Command-line front end: `evolve`, `play`, `validate` and `gen-random`.
//
// Exit codes: 0 success, 1 usage or configuration error (including script
// parse errors), 2 runtime fault. The RACKO_THREADS environment variable
// caps the number of evaluation threads.

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "racko/evolve.h"

namespace racko {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// "case1", "case2" or "case3": (population, generations, elites,
// tournament) = (10, 4, 7, 5), (20, 6, 7, 7), (30, 8, 10, 10), all with 100
// games per match and 3 repeats per seat. Throws ConfigError otherwise.
GAConfig PresetConfig(std::string_view name);

// RACKO_THREADS if set to a positive integer, else the hardware concurrency.
int ThreadsFromEnv();

struct RunConfig {
  GAConfig ga;
  std::string out_dir;
  std::optional<std::string> preset;
};

// The resolved configuration as written to run.json. Thread count is left
// out so outputs do not depend on it.
std::string RunConfigJson(const RunConfig& run);

// Fills `ga` from a JSON object using GAConfig field names. Unknown keys
// and ill-typed values throw ConfigError. Returns the top-level keys seen.
std::set<std::string> ApplyConfigJson(std::string_view json_text, GAConfig& ga);

// Runs the search and writes, under out_dir: history.csv, best.script,
// run.json and generations/gen_<g>.script. Nothing is written if the run
// fails; best.script is written last.
EvolutionReport RunEvolve(const RunConfig& run, const GenerationObserver& observer = {});

// history.csv contents: header plus one row per generation, fractions with
// six decimals.
std::string HistoryCsv(const EvolutionReport& report);
std::string GenerationScriptPath(int generation);

// Entry point shared by the `racko` binary and the tests. `args` excludes
// the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace racko

#endif  // RACKO_HARNESS_H_
