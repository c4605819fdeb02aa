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

#ifndef NUMPROBE_FINNUM_H_
#define NUMPROBE_FINNUM_H_

#include <array>
#include <string_view>

#include "absl/status/statusor.h"

namespace numprobe {

// FinNum numeral taxonomy.
enum class Category {
  kMonetary,
  kTemporal,
  kPercentage,
  kQuantity,
  kProductNumber,
  kIndicator,
  kOption,
};

enum class Subcategory {
  kMoney,
  kQuote,
  kChange,
  kForecast,
  kBuyPrice,
  kSellPrice,
  kSupportOrResistance,
  kStopLoss,
  kDate,
  kTime,
  kRelative,
  kAbsolute,
  kQuantity,
  kProductNumber,
  kIndicator,
  kExercisePrice,
  kMaturityDate,
};

inline constexpr std::array<Category, 7> kAllCategories = {
    Category::kMonetary,      Category::kTemporal,  Category::kPercentage,
    Category::kQuantity,      Category::kProductNumber, Category::kIndicator,
    Category::kOption};

struct FinNumLabel {
  Category category = Category::kQuantity;
  Subcategory subcategory = Subcategory::kQuantity;

  friend bool operator==(const FinNumLabel&, const FinNumLabel&) = default;
};

// True iff the pair is one of the seventeen taxonomy rows.
bool IsLegal(Category category, Subcategory subcategory);
inline bool IsLegal(const FinNumLabel& label) {
  return IsLegal(label.category, label.subcategory);
}

// Canonical artifact names: "ProductNumber", "buy_price".
std::string_view CategoryName(Category category);
std::string_view SubcategoryName(Subcategory subcategory);

// Lenient parsers. Accept canonical names as well as the annotator
// prompt's spelling ("Product Number", "buy price", "Indicator"),
// case-insensitively.
absl::StatusOr<Category> ParseCategory(std::string_view name);
absl::StatusOr<Subcategory> ParseSubcategory(std::string_view name);
// Parses and checks legality of the pair.
absl::StatusOr<FinNumLabel> ParseLabel(std::string_view category,
                                       std::string_view subcategory);

// Label used when an annotator gives nothing usable for a mention.
inline constexpr FinNumLabel kFallbackLabel = {Category::kQuantity,
                                               Subcategory::kQuantity};

}  // namespace numprobe

#endif  // NUMPROBE_FINNUM_H_
