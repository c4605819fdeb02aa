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

#include "numprobe/finnum.h"

#include <string>
#include <utility>

#include "absl/status/status.h"
#include "fmt/format.h"
#include "text_util.h"

namespace numprobe {
namespace {

struct CategoryEntry {
  Category category;
  std::string_view name;
};

struct SubcategoryEntry {
  Subcategory subcategory;
  Category category;
  std::string_view name;
};

constexpr CategoryEntry kCategories[] = {
    {Category::kMonetary, "Monetary"},
    {Category::kTemporal, "Temporal"},
    {Category::kPercentage, "Percentage"},
    {Category::kQuantity, "Quantity"},
    {Category::kProductNumber, "ProductNumber"},
    {Category::kIndicator, "Indicator"},
    {Category::kOption, "Option"},
};

// One row per taxonomy leaf.
constexpr SubcategoryEntry kSubcategories[] = {
    {Subcategory::kMoney, Category::kMonetary, "money"},
    {Subcategory::kQuote, Category::kMonetary, "quote"},
    {Subcategory::kChange, Category::kMonetary, "change"},
    {Subcategory::kForecast, Category::kMonetary, "forecast"},
    {Subcategory::kBuyPrice, Category::kMonetary, "buy_price"},
    {Subcategory::kSellPrice, Category::kMonetary, "sell_price"},
    {Subcategory::kSupportOrResistance, Category::kMonetary,
     "support_or_resistance"},
    {Subcategory::kStopLoss, Category::kMonetary, "stop_loss"},
    {Subcategory::kDate, Category::kTemporal, "date"},
    {Subcategory::kTime, Category::kTemporal, "time"},
    {Subcategory::kRelative, Category::kPercentage, "relative"},
    {Subcategory::kAbsolute, Category::kPercentage, "absolute"},
    {Subcategory::kQuantity, Category::kQuantity, "quantity"},
    {Subcategory::kProductNumber, Category::kProductNumber, "product_number"},
    {Subcategory::kIndicator, Category::kIndicator, "indicator"},
    {Subcategory::kExercisePrice, Category::kOption, "exercise_price"},
    {Subcategory::kMaturityDate, Category::kOption, "maturity_date"},
};

// Lowercase, with spaces and hyphens folded to underscores.
std::string Fold(std::string_view name) {
  std::string out = ToLower(Strip(name));
  for (char& c : out) {
    if (c == ' ' || c == '-') c = '_';
  }
  return out;
}

}  // namespace

bool IsLegal(Category category, Subcategory subcategory) {
  for (const auto& e : kSubcategories) {
    if (e.subcategory == subcategory) return e.category == category;
  }
  return false;
}

std::string_view CategoryName(Category category) {
  for (const auto& e : kCategories) {
    if (e.category == category) return e.name;
  }
  return "?";
}

std::string_view SubcategoryName(Subcategory subcategory) {
  for (const auto& e : kSubcategories) {
    if (e.subcategory == subcategory) return e.name;
  }
  return "?";
}

absl::StatusOr<Category> ParseCategory(std::string_view name) {
  std::string folded = Fold(name);
  if (folded == "product_number") folded = "productnumber";
  for (const auto& e : kCategories) {
    if (ToLower(e.name) == folded) return e.category;
  }
  return absl::InvalidArgumentError(fmt::format("unknown category '{}'", name));
}

absl::StatusOr<Subcategory> ParseSubcategory(std::string_view name) {
  const std::string folded = Fold(name);
  for (const auto& e : kSubcategories) {
    if (e.name == folded) return e.subcategory;
  }
  if (folded == "productnumber") return Subcategory::kProductNumber;
  return absl::InvalidArgumentError(fmt::format("unknown subcategory '{}'", name));
}

absl::StatusOr<FinNumLabel> ParseLabel(std::string_view category,
                                       std::string_view subcategory) {
  absl::StatusOr<Category> c = ParseCategory(category);
  if (!c.ok()) return c.status();
  absl::StatusOr<Subcategory> s = ParseSubcategory(subcategory);
  if (!s.ok()) return s.status();
  if (!IsLegal(*c, *s)) {
    return absl::InvalidArgumentError(fmt::format(
        "subcategory '{}' is not legal for category '{}'", subcategory, category));
  }
  return FinNumLabel{*c, *s};
}

}  // namespace numprobe
