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


// Bounds that random augmentation must respect, one case per category and
// value regime. Each bound is written from the documented ranges, not from
// the generator's code.

#ifndef NUMPROBE_TESTS_RANGE_ORACLE_H_
#define NUMPROBE_TESTS_RANGE_ORACLE_H_

#include <cmath>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fmt/format.h"
#include "numprobe/augment.h"
#include "numprobe/numeral.h"
#include "numprobe/random.h"

namespace numprobe::testing {

struct RangeCase {
  std::string name;
  std::string sentence;  // exactly one numeral
  FinNumLabel label;
  std::function<bool(double base, double value)> in_bounds;
};

inline std::vector<RangeCase> RangeCases() {
  auto within = [](double factor) {
    return [factor](double b, double v) {
      return std::abs(v - b) <= factor * std::abs(b) + 1e-9 && (v > 0) == (b > 0);
    };
  };
  auto interval = [](double lo, double hi) {
    return [lo, hi](double, double v) { return v >= lo && v <= hi; };
  };
  const auto is_integer = [](double v) { return v == std::floor(v); };
  return {
      {"monetary quote", "Shares closed at $245.30 today.",
       {Category::kMonetary, Subcategory::kQuote}, within(1.0)},
      {"monetary money million", "Net income was $110 million.",
       {Category::kMonetary, Subcategory::kMoney}, within(1.0)},
      {"percentage relative", "Revenue increased by 3.56% in Q3.",
       {Category::kPercentage, Subcategory::kRelative}, within(1.0)},
      {"percentage absolute", "Margin stood at 45% for the year.",
       {Category::kPercentage, Subcategory::kAbsolute}, within(1.0)},
      {"quantity small base", "The bank opened 3 branches.",
       {Category::kQuantity, Subcategory::kQuantity}, interval(0, 12)},
      {"quantity large base", "We sold 1,000 units.",
       {Category::kQuantity, Subcategory::kQuantity},
       [is_integer](double b, double v) { return is_integer(v) && v > 0 && v <= 2 * b; }},
      {"product number", "The Model 15 launch lifted sales.",
       {Category::kProductNumber, Subcategory::kProductNumber}, within(2.0)},
      {"indicator", "The debt ratio was 0.25 at year end.",
       {Category::kIndicator, Subcategory::kIndicator},
       [](double b, double v) { return std::abs(v - b) <= 2 * std::abs(b) + 1e-9; }},
      {"option exercise price", "Calls at the 150 strike were active.",
       {Category::kOption, Subcategory::kExercisePrice}, within(2.0)},
      {"date", "The deal closed on Sep. 28, 2025 after review.",
       {Category::kTemporal, Subcategory::kDate},
       [](double b, double v) { return std::abs(v - b) <= 30; }},
      {"option maturity date", "The calls expire on June 21, 2024.",
       {Category::kOption, Subcategory::kMaturityDate},
       [](double b, double v) { return std::abs(v - b) <= 30; }},
      {"date field month-like", "Results arrive in 6 months.",
       {Category::kTemporal, Subcategory::kDate}, interval(1, 12)},
      {"date field day-like", "The plant idles for 28 days.",
       {Category::kTemporal, Subcategory::kDate}, interval(1, 31)},
      {"date field year", "The bank opened branches in 2022.",
       {Category::kTemporal, Subcategory::kDate},
       [](double b, double v) { return std::abs(v - b) <= 30 && v >= 1; }},
      {"time base zero", "The auction opens at minute 0 of the hour.",
       {Category::kTemporal, Subcategory::kTime}, interval(1, 60)},
      {"time base at most 12", "The bell rings at 9 sharp.",
       {Category::kTemporal, Subcategory::kTime}, interval(1, 12)},
      {"time base under 60", "The call ends at minute 45.",
       {Category::kTemporal, Subcategory::kTime}, interval(1, 60)},
      {"clock time", "Trading halted at 10:30 AM.",
       {Category::kTemporal, Subcategory::kTime},
       [](double b, double v) { return std::abs(v - b) <= 0.2 * b + 1e-9; }},
  };
}

struct RangeOutcome {
  int values = 0;
  int violations = 0;
  int duplicate_batches = 0;  // batches with repeated values or the base value
  std::string first_problem;
};

// Draws random variant batches until `values` values have been checked.
inline RangeOutcome RunRangeCase(const RangeCase& rc, int values, uint64_t seed) {
  RangeOutcome out;
  std::vector<NumeralMention> mentions = ExtractNumerals(rc.sentence);
  if (mentions.size() != 1) {
    out.violations = 1;
    out.first_problem = fmt::format("expected one numeral in '{}'", rc.sentence);
    return out;
  }
  NumeralMention m = mentions[0];
  m.label = rc.label;
  const double base = m.value.ToDouble();
  for (int batch = 0; out.values < values; ++batch) {
    Rng rng = Rng::ForStream(seed, fmt::format("{}#{}", rc.name, batch));
    const GenerationResult g = RandomAugment(m, rng);
    std::set<std::string> seen;
    bool duplicate = false;
    for (const Rendition& r : g.renditions) {
      ++out.values;
      const Decimal normalized = r.value.Normalized();
      if (r.value == m.value || !seen.insert(normalized.ToString()).second) duplicate = true;
      if (!rc.in_bounds(base, r.value.ToDouble())) {
        ++out.violations;
        if (out.first_problem.empty()) {
          out.first_problem = fmt::format("{}: base {} produced {} ('{}')", rc.name,
                                          m.value.ToString(), r.value.ToString(), r.surface);
        }
      }
    }
    if (duplicate) ++out.duplicate_batches;
    if (g.renditions.empty()) break;
  }
  return out;
}

}  // namespace numprobe::testing

#endif  // NUMPROBE_TESTS_RANGE_ORACLE_H_
