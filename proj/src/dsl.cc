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

#include "racko/dsl.h"

#include <algorithm>

namespace racko {

ActionContext SwapContext(const Rack& hand, Action action, Card placed) {
  if (!action.IsSwap()) throw ContractViolation("SwapContext needs a swap action");
  ActionContext ctx{action, hand, hand, placed, action.slot};
  ctx.resulting_hand[action.slot] = placed;
  return ctx;
}

ActionContext PassContext(const Rack& hand) {
  return ActionContext{Action::Pass(), hand, hand, std::nullopt, std::nullopt};
}

namespace {

bool PlacesInto(const ActionContext& ctx, int slot) {
  return ctx.placed_slot.has_value() && *ctx.placed_slot == slot;
}

}  // namespace

bool EvalPredicate(const Predicate& p, const ActionContext& ctx) {
  switch (p.kind) {
    case PredicateKind::kIsBigger:
      return p.index < kRackSize - 1 && PlacesInto(ctx, p.index) &&
             ctx.resulting_hand[p.index] > ctx.resulting_hand[p.index + 1];
    case PredicateKind::kIsSmaller:
      return p.index < kRackSize - 1 && PlacesInto(ctx, p.index) &&
             ctx.resulting_hand[p.index] < ctx.resulting_hand[p.index + 1];
    case PredicateKind::kGivesRacko:
      return ctx.action.IsSwap() && HasRacko(ctx.resulting_hand);
    case PredicateKind::kHasRacko:
      return HasRacko(ctx.current_hand);
    case PredicateKind::kIsCardBetweenNumbers: {
      if (!PlacesInto(ctx, p.index)) return false;
      const auto [lo, hi] = std::minmax(p.lo, p.hi);
      return *ctx.placed_value >= lo && *ctx.placed_value <= hi;
    }
  }
  return false;
}

bool RuleFires(const Rule& rule, const ActionContext& ctx) {
  return std::all_of(rule.conjuncts.begin(), rule.conjuncts.end(),
                     [&](const Predicate& p) { return EvalPredicate(p, ctx); });
}

void Validate(const GrammarConfig& cfg) {
  if (cfg.max_rules < 1) throw ConfigError("max_rules must be >= 1");
  if (cfg.max_conjuncts < 1) throw ConfigError("max_conjuncts must be >= 1");
  if (cfg.min_initial_rules < 1 || cfg.max_initial_rules < cfg.min_initial_rules) {
    throw ConfigError("initial rule count range must satisfy 1 <= min <= max");
  }
  if (!(cfg.single_conjunct_probability >= 0.0 && cfg.single_conjunct_probability <= 1.0)) {
    throw ConfigError("single_conjunct_probability must lie in [0, 1]");
  }
}

bool IsWellFormed(const Predicate& p) {
  auto slot_ok = [](int i) { return i >= 0 && i < kRackSize; };
  auto number_ok = [](int n) { return n >= kMinNumber && n <= kMaxNumber; };
  switch (p.kind) {
    case PredicateKind::kIsBigger:
    case PredicateKind::kIsSmaller:
      return slot_ok(p.index) && p.lo == 0 && p.hi == 0;
    case PredicateKind::kGivesRacko:
    case PredicateKind::kHasRacko:
      return p.index == 0 && p.lo == 0 && p.hi == 0;
    case PredicateKind::kIsCardBetweenNumbers:
      return slot_ok(p.index) && number_ok(p.lo) && number_ok(p.hi);
  }
  return false;
}

bool SatisfiesInvariants(const Script& script, const GrammarConfig& cfg) {
  if (script.rules.empty() || static_cast<int>(script.rules.size()) > cfg.max_rules) return false;
  for (const Rule& rule : script.rules) {
    const int n = static_cast<int>(rule.conjuncts.size());
    if (n < 1 || n > cfg.max_conjuncts) return false;
    if (!std::all_of(rule.conjuncts.begin(), rule.conjuncts.end(), IsWellFormed)) return false;
  }
  return true;
}

namespace {

Predicate RandomPredicate(Rng& rng) {
  switch (static_cast<PredicateKind>(UniformInt(rng, 0, kNumPredicateKinds - 1))) {
    case PredicateKind::kIsBigger:
      return Predicate::IsBigger(UniformInt(rng, 0, kRackSize - 1));
    case PredicateKind::kIsSmaller:
      return Predicate::IsSmaller(UniformInt(rng, 0, kRackSize - 1));
    case PredicateKind::kGivesRacko:
      return Predicate::GivesRacko();
    case PredicateKind::kHasRacko:
      return Predicate::HasRacko();
    case PredicateKind::kIsCardBetweenNumbers: {
      const int lo = UniformInt(rng, kMinNumber, kMaxNumber);
      const int hi = UniformInt(rng, kMinNumber, kMaxNumber);
      return Predicate::IsCardBetweenNumbers(lo, hi, UniformInt(rng, 0, kRackSize - 1));
    }
  }
  return Predicate::GivesRacko();
}

}  // namespace

Rule RandomRule(Rng& rng, const GrammarConfig& cfg) {
  int count = 1;
  if (cfg.max_conjuncts >= 2 && !Bernoulli(rng, cfg.single_conjunct_probability)) {
    count = UniformInt(rng, 2, cfg.max_conjuncts);
  }
  Rule rule;
  rule.conjuncts.reserve(count);
  for (int i = 0; i < count; ++i) rule.conjuncts.push_back(RandomPredicate(rng));
  return rule;
}

Script RandomScript(Rng& rng, const GrammarConfig& cfg) {
  const int lo = std::min(cfg.min_initial_rules, cfg.max_rules);
  const int hi = std::min(cfg.max_initial_rules, cfg.max_rules);
  const int count = UniformInt(rng, lo, hi);
  Script script;
  script.rules.reserve(count);
  for (int i = 0; i < count; ++i) script.rules.push_back(RandomRule(rng, cfg));
  return script;
}

}  // namespace racko
