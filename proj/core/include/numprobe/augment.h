//
// Copyright 2026 The numprobe Authors
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
//


// Evaluation units and their perturbed variants.
//
// A unit is (base sentence, target mention, augmentation spec) together with
// up to k variants. Each variant differs from the base only inside the
// target span. Variant generation is a pure function of (unit_id, seed).

#ifndef NUMPROBE_AUGMENT_H_
#define NUMPROBE_AUGMENT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "numprobe/corpus.h"
#include "numprobe/decimal.h"
#include "numprobe/finnum.h"
#include "numprobe/numeral.h"
#include "numprobe/random.h"

namespace numprobe {

enum class Family { kRandom, kRuleBased };

enum class Rule {
  kDateShift,
  kDurationConvert,
  kExtraDecimal,
  kFractionalShift,
  kScaleChange,
  kMillionToBillion,
  kLastDigitEdit,
};

inline constexpr std::array<Rule, 7> kAllRules = {
    Rule::kDateShift,       Rule::kDurationConvert,  Rule::kExtraDecimal, Rule::kFractionalShift,
    Rule::kScaleChange,     Rule::kMillionToBillion, Rule::kLastDigitEdit,
};

inline constexpr int kRandomVariantCount = 9;

std::string_view FamilyName(Family family);  // "random", "rule_based"
absl::StatusOr<Family> ParseFamily(std::string_view name);
std::string_view RuleName(Rule rule);  // "DateShift", ...
absl::StatusOr<Rule> ParseRule(std::string_view name);
// Variants per unit: 9 for every rule except MillionToBillion (1) and
// LastDigitEdit (2).
int RuleVariantCount(Rule rule);

struct AugmentationSpec {
  Family family = Family::kRandom;
  std::optional<Rule> rule;  // set iff family == kRuleBased
  int k = kRandomVariantCount;

  static AugmentationSpec Random() { return {Family::kRandom, std::nullopt, kRandomVariantCount}; }
  static AugmentationSpec ForRule(Rule rule) {
    return {Family::kRuleBased, rule, RuleVariantCount(rule)};
  }
};

struct Variant {
  std::string text;     // full perturbed sentence
  std::string surface;  // text inside the target span
  Decimal value;        // surface value of the perturbed numeral
  NumberStyle style;
  std::optional<Decimal> distance;  // |base value - value|, set by the protocol stage
  std::optional<double> validity;
};

struct EvaluationUnit {
  std::string unit_id;
  std::string base_id;
  std::string base_text;
  size_t target_index = 0;  // index into the base sentence's mentions
  NumeralMention target;    // carries span, value, style and label
  AugmentationSpec spec;
  std::vector<Variant> variants;
  std::vector<std::string> warnings;

  Span variant_span(size_t i) const {
    return {target.span.start,
            target.span.start + variants[i].text.size() - (base_text.size() - target.span.size())};
  }
};

// Rule applicability for a labeled mention.
bool RuleApplies(Rule rule, const NumeralMention& mention);

// Replacement numerals for `target` (surface strings with their values and
// styles), before substitution into the sentence.
struct Rendition {
  std::string surface;
  Decimal value;
  NumberStyle style;
};

struct GenerationResult {
  std::vector<Rendition> renditions;
  std::vector<std::string> warnings;
};

// Random shifts bounded per category. Requires mention.label.
GenerationResult RandomAugment(const NumeralMention& mention, Rng& rng);
// One rule transform. InvalidArgument when the rule does not apply.
absl::StatusOr<GenerationResult> ApplyRule(const NumeralMention& mention, Rule rule, Rng& rng);

struct MakeUnitsOptions {
  std::set<Family> families = {Family::kRandom, Family::kRuleBased};
  std::set<Rule> rules = {kAllRules.begin(), kAllRules.end()};
  uint64_t seed = 0;
  int workers = 1;
};

// One unit per (sentence, labeled mention, applicable spec), in corpus
// order, then mention order, then random before the rules in table order.
// Output is identical for any worker count.
std::vector<EvaluationUnit> MakeUnits(const Corpus& corpus, const MakeUnitsOptions& options);

// Fills `unit.variants` from its spec using the unit's own random stream.
void GenerateVariants(EvaluationUnit& unit, uint64_t seed);

std::string UnitId(std::string_view base_id, size_t mention_index, const AugmentationSpec& spec);

// JSON lines: {unit_id, base_id, base_text, target_index, target_span,
// target, base_value, category, subcategory, family, rule, k,
// variants: [{text, value, distance?, validity?}], warnings?}.
std::string SerializeUnit(const EvaluationUnit& unit);
std::string SerializeUnits(const std::vector<EvaluationUnit>& units);
// InvalidArgument naming the line for schema violations.
absl::StatusOr<std::vector<EvaluationUnit>> ParseUnits(std::string_view content);

}  // namespace numprobe

#endif  // NUMPROBE_AUGMENT_H_
