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


#include "numprobe/augment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fmt/format.h"
#include "io_util.h"
#include "json.hpp"
#include "text_util.h"

namespace numprobe {
namespace {

namespace chrono = std::chrono;
using Json = nlohmann::ordered_json;

constexpr int kMaxRedraws = 100;

constexpr std::pair<Rule, std::string_view> kRuleNames[] = {
    {Rule::kDateShift, "DateShift"},
    {Rule::kDurationConvert, "DurationConvert"},
    {Rule::kExtraDecimal, "ExtraDecimal"},
    {Rule::kFractionalShift, "FractionalShift"},
    {Rule::kScaleChange, "ScaleChange"},
    {Rule::kMillionToBillion, "MillionToBillion"},
    {Rule::kLastDigitEdit, "LastDigitEdit"},
};

bool IsCalendarKind(const NumeralMention& m) {
  return m.kind() == NumeralKind::kDate || m.kind() == NumeralKind::kTime;
}

bool HasDateLabel(const NumeralMention& m) {
  return m.label && (m.label->subcategory == Subcategory::kDate ||
                     m.label->subcategory == Subcategory::kMaturityDate);
}

// A bare year written as a plain number, e.g. "During 2024".
bool IsYearField(const NumeralMention& m) {
  return m.kind() == NumeralKind::kCardinal && HasDateLabel(m) && m.style.decimals == 0 &&
         !m.style.thousands_separators && m.value >= Decimal::FromInt(1000) &&
         m.value <= Decimal::FromInt(9999);
}

bool IsWholeNumber(const NumeralMention& m) {
  return (m.kind() == NumeralKind::kCardinal || m.kind() == NumeralKind::kMonetary) &&
         m.style.decimals == 0;
}

// Collects distinct renditions, skipping values that do not render.
class Collector {
 public:
  explicit Collector(const NumeralMention& base) {
    values_.insert(base.value);
    surfaces_.insert(base.surface);
  }

  // Distinctness by value (random family) or by surface (rules, where
  // value-preserving rewrites are allowed).
  bool AddByValue(const Decimal& value, const NumberStyle& style) {
    if (values_.contains(value)) return false;
    return Add(value, style);
  }
  bool AddBySurface(const Decimal& value, const NumberStyle& style) { return Add(value, style); }

  size_t size() const { return out_.renditions.size(); }
  GenerationResult& result() { return out_; }

 private:
  bool Add(const Decimal& value, const NumberStyle& style) {
    absl::StatusOr<std::string> surface = RenderNumber(value, style);
    if (!surface.ok() || surfaces_.contains(*surface)) return false;
    values_.insert(value);
    surfaces_.insert(*surface);
    out_.renditions.push_back({*surface, value, style});
    return true;
  }

  std::set<Decimal> values_;
  std::set<std::string> surfaces_;
  GenerationResult out_;
};

int64_t FloorPositive(const Decimal& d) { return d.Truncated(); }
int64_t CeilPositive(const Decimal& d) { return d.Truncated() + (d.IsInteger() ? 0 : 1); }

// Multiplicative shift b * (1 + u), u ~ U[-spread, spread), rounded to the
// base's decimal places. A zero base shifts around a magnitude of 10.
std::optional<Decimal> DrawMultiplicative(const NumeralMention& m, double spread,
                                          bool keep_sign, Rng& rng) {
  const double u = rng.Uniform(-spread, spread);
  const double b = m.value.ToDouble();
  const double x = m.value.IsZero() ? 10.0 * u : b * (1.0 + u);
  const Decimal v = Decimal::FromDouble(x, m.style.decimals);
  if (keep_sign) {
    if (v.IsZero()) return std::nullopt;
    if (!m.value.IsZero() && v.IsNegative() != m.value.IsNegative()) return std::nullopt;
    if (m.value.IsZero() && v.IsNegative()) return std::nullopt;
  }
  return v;
}

// Whole-number shift s with the result kept strictly between 0 and twice
// the base: s in [-(ceil|b|-1), floor|b|], s != 0.
std::optional<Decimal> DrawIntegerShift(const NumeralMention& m, Rng& rng) {
  const Decimal a = m.value.Abs();
  const int64_t s = rng.UniformInt(-(CeilPositive(a) - 1), FloorPositive(a));
  if (s == 0) return std::nullopt;
  const Decimal v = a + Decimal::FromInt(s);
  return m.value.IsNegative() ? -v : v;
}

std::optional<Decimal> DrawTimeField(const NumeralMention& m, Rng& rng) {
  const Decimal& b = m.value;
  if (b.IsZero()) return Decimal::FromInt(rng.UniformInt(1, 60));
  if (b <= Decimal::FromInt(12)) return Decimal::FromInt(rng.UniformInt(1, 12));
  if (b < Decimal::FromInt(60)) return Decimal::FromInt(rng.UniformInt(1, 60));
  return Decimal::FromDouble(b.ToDouble() * (1.0 + rng.Uniform(-0.2, 0.2)), m.style.decimals);
}

int64_t DrawDayOffset(Rng& rng) {
  const int64_t magnitude = rng.UniformInt(1, 30);
  return rng.UniformInt(0, 1) == 0 ? -magnitude : magnitude;
}

// Plain numbers labeled as dates: month-like, day-like and minute-like
// fields stay inside their natural bounds; larger fields shift by up to 30.
std::optional<Decimal> DrawDateField(const NumeralMention& m, Rng& rng) {
  const Decimal& b = m.value;
  if (b <= Decimal::FromInt(12)) return Decimal::FromInt(rng.UniformInt(1, 12));
  if (b <= Decimal::FromInt(31)) return Decimal::FromInt(rng.UniformInt(1, 31));
  if (b <= Decimal::FromInt(60)) return Decimal::FromInt(rng.UniformInt(1, 60));
  const Decimal v = b + Decimal::FromInt(DrawDayOffset(rng));
  if (v < Decimal::FromInt(1)) return std::nullopt;
  return v;
}

std::optional<Decimal> DrawRandom(const NumeralMention& m, Rng& rng) {
  if (m.kind() == NumeralKind::kDate) return m.value + Decimal::FromInt(DrawDayOffset(rng));
  if (m.kind() == NumeralKind::kTime) return DrawTimeField(m, rng);
  const FinNumLabel& label = *m.label;
  if (HasDateLabel(m)) return DrawDateField(m, rng);
  if (label.subcategory == Subcategory::kTime) return DrawTimeField(m, rng);
  switch (label.category) {
    case Category::kMonetary:
    case Category::kPercentage:
      return DrawMultiplicative(m, 1.0, /*keep_sign=*/true, rng);
    case Category::kQuantity:
      if (m.value.Abs() <= Decimal::FromInt(5)) {
        return DrawMultiplicative(m, 3.0, /*keep_sign=*/true, rng);
      }
      return DrawIntegerShift(m, rng);
    case Category::kProductNumber:
    case Category::kOption:
      return DrawMultiplicative(m, 2.0, /*keep_sign=*/true, rng);
    case Category::kIndicator:
      return DrawMultiplicative(m, 2.0, /*keep_sign=*/false, rng);
    case Category::kTemporal:
      return DrawDateField(m, rng);
  }
  return std::nullopt;
}

void Shuffle(std::vector<int64_t>& items, Rng& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(i) - 1));
    std::swap(items[i - 1], items[j]);
  }
}

GenerationResult DateShift(const NumeralMention& m, Rng& rng) {
  Collector c(m);
  const NumberStyle& style = m.style;
  if (IsYearField(m)) {
    const int64_t year = m.value.Truncated();
    const int direction = year + 9 > 9999 ? -1 : 1;
    for (int o = 1; o <= 9; ++o) c.AddBySurface(Decimal::FromInt(year + direction * o), style);
    return std::move(c.result());
  }
  const bool month_name = style.date_order == DateOrder::kMonthDayYear ||
                          style.date_order == DateOrder::kDayMonthYear;
  if (month_name && style.has_year) {
    const chrono::year_month_day ymd{chrono::sys_days{chrono::days{m.value.Truncated()}}};
    const int year = static_cast<int>(ymd.year());
    const int month = static_cast<int>(static_cast<unsigned>(ymd.month()));
    const int day = static_cast<int>(static_cast<unsigned>(ymd.day()));
    const int direction = year + 9 > 9999 ? -1 : 1;
    for (int o = 1; o <= 9; ++o) {
      const int y = year + direction * o;
      std::optional<int64_t> index = DayIndex(y, month, day);
      if (!index) index = DayIndex(y, month, day - 1);  // Feb 29 in a common year
      if (index) c.AddBySurface(Decimal::FromInt(*index), style);
    }
    return std::move(c.result());
  }
  std::vector<int64_t> offsets;
  for (int64_t o = 1; o <= 30; ++o) {
    offsets.push_back(o);
    offsets.push_back(-o);
  }
  Shuffle(offsets, rng);
  for (int64_t o : offsets) {
    if (c.size() == 9) break;
    c.AddBySurface(m.value + Decimal::FromInt(o), style);
  }
  return std::move(c.result());
}

std::optional<DurationUnit> SmallerUnit(DurationUnit u) {
  switch (u) {
    case DurationUnit::kMinute:
      return std::nullopt;
    case DurationUnit::kHour:
      return DurationUnit::kMinute;
    case DurationUnit::kDay:
      return DurationUnit::kHour;
    case DurationUnit::kWeek:
      return DurationUnit::kDay;
    case DurationUnit::kMonth:
      return DurationUnit::kWeek;
    case DurationUnit::kYear:
      return DurationUnit::kMonth;
  }
  return std::nullopt;
}

std::optional<DurationUnit> LargerUnit(DurationUnit u) {
  switch (u) {
    case DurationUnit::kMinute:
      return DurationUnit::kHour;
    case DurationUnit::kHour:
      return DurationUnit::kDay;
    case DurationUnit::kDay:
      return DurationUnit::kWeek;
    case DurationUnit::kWeek:
      return DurationUnit::kMonth;
    case DurationUnit::kMonth:
      return DurationUnit::kYear;
    case DurationUnit::kYear:
      return std::nullopt;
  }
  return std::nullopt;
}

// How many of the next smaller unit make one `u` (a month counts 4 weeks).
int64_t SmallerPerUnit(DurationUnit u) {
  switch (u) {
    case DurationUnit::kMinute:
      return 1;
    case DurationUnit::kHour:
      return 60;
    case DurationUnit::kDay:
      return 24;
    case DurationUnit::kWeek:
      return 7;
    case DurationUnit::kMonth:
      return 4;
    case DurationUnit::kYear:
      return 12;
  }
  return 1;
}

GenerationResult DurationConvert(const NumeralMention& m) {
  Collector c(m);
  const Decimal n = m.value;
  const int dec = m.style.decimals;
  auto add = [&](const Decimal& value, DurationUnit unit) {
    if (c.size() >= 9 || value <= Decimal::FromInt(0)) return;
    NumberStyle style = m.style;
    style.unit = unit;
    c.AddBySurface(value.WithScale(std::max(dec, value.Normalized().scale())), style);
  };
  const DurationUnit u = m.style.unit;
  const std::optional<DurationUnit> smaller = SmallerUnit(u);
  const std::optional<DurationUnit> larger = LargerUnit(u);
  if (smaller) add(n * Decimal::FromInt(SmallerPerUnit(u)), *smaller);
  if (larger) add(n, *larger);
  if (smaller) add(n, *smaller);
  if (smaller && SmallerUnit(*smaller)) {
    add(n * Decimal::FromInt(SmallerPerUnit(u) * SmallerPerUnit(*smaller)),
        *SmallerUnit(*smaller));
  }
  if (larger) {
    const int64_t per = SmallerPerUnit(*larger);
    const Decimal scaled = n.WithScale(dec);
    if (scaled.unscaled() % per == 0) add(Decimal(scaled.unscaled() / per, dec), *larger);
  }
  const Decimal one = Decimal::FromInt(1);
  const Decimal same_unit[] = {
      n + one,
      n + Decimal::FromInt(2),
      n * Decimal::FromInt(2),
      n - one,
      n * Decimal::FromInt(3),
      n + Decimal::FromInt(3),
      n + Decimal::FromInt(5),
      n + Decimal::FromInt(10),
      n * Decimal::FromInt(10),
      n + Decimal::FromInt(20),
  };
  for (const Decimal& v : same_unit) add(v, u);
  for (int step = 1; c.size() < 9 && step < 100; ++step) {
    if (larger) add(n + Decimal::FromInt(step), *larger);
    if (smaller) add(n + Decimal::FromInt(step), *smaller);
    add(n + Decimal::FromInt(20 + step), u);
  }
  return std::move(c.result());
}

GenerationResult ExtraDecimal(const NumeralMention& m) {
  Collector c(m);
  NumberStyle style = m.style;
  style.decimals = m.style.decimals + 1;
  for (int digit = 1; digit <= 9; ++digit) {
    const Decimal extra(digit, style.decimals);
    c.AddBySurface(m.value.IsNegative() ? m.value - extra : m.value + extra, style);
  }
  return std::move(c.result());
}

GenerationResult FractionalShift(const NumeralMention& m, Rng& rng) {
  Collector c(m);
  NumberStyle style = m.style;
  style.decimals = std::max(m.style.decimals, 2);
  int64_t grid = 1;
  for (int i = 0; i < style.decimals; ++i) grid *= 10;
  for (int failures = 0; c.size() < 9 && failures < kMaxRedraws;) {
    if (!c.AddByValue(Decimal(rng.UniformInt(1, grid - 1), style.decimals), style)) ++failures;
  }
  return std::move(c.result());
}

GenerationResult ScaleChange(const NumeralMention& m) {
  Collector c(m);
  for (int e : {1, 2, 3, 4, 5, -1, -2, -3, -4}) {
    try {
      const Decimal v = m.value.ShiftPow10(e).Normalized();
      NumberStyle style = m.style;
      style.decimals = v.scale();
      c.AddBySurface(v, style);
    } catch (const std::overflow_error&) {
      c.result().warnings.push_back(fmt::format("x10^{} overflows; skipped", e));
    }
  }
  return std::move(c.result());
}

// "million" -> "billion" keeping the letter case of the source word.
std::string BillionText(std::string_view million) {
  if (million == "M") return "B";
  if (million == "m") return "b";
  if (million == "MILLION") return "BILLION";
  if (!million.empty() && million[0] == 'M') return "Billion";
  return "billion";
}

GenerationResult MillionToBillion(const NumeralMention& m) {
  Collector c(m);
  const Decimal v = m.value.ShiftPow10(-3).Normalized();
  NumberStyle style = m.style;
  style.decimals = v.scale();
  style.scale = ScaleWord::kBillion;
  style.scale_text = BillionText(m.style.scale_text);
  c.AddBySurface(v, style);
  return std::move(c.result());
}

GenerationResult LastDigitEdit(const NumeralMention& m) {
  Collector c(m);
  const int64_t a = m.value.Abs().Truncated();
  const int64_t sign = m.value.IsNegative() ? -1 : 1;
  c.AddBySurface(Decimal::FromInt(sign * (a * 10 + a % 10)), m.style);
  c.AddBySurface(Decimal::FromInt(sign * (a / 10)), m.style);
  return std::move(c.result());
}

Json VariantToJson(const Variant& v) {
  Json o;
  o["text"] = v.text;
  o["value"] = v.value.ToString();
  if (v.distance) o["distance"] = v.distance->ToString();
  if (v.validity) o["validity"] = *v.validity;
  return o;
}

absl::Status LineError(size_t line, std::string_view what) {
  return absl::InvalidArgumentError(fmt::format("line {}: {}", line, what));
}

absl::StatusOr<Decimal> JsonDecimal(const Json& o, const char* key) {
  if (!o.contains(key) || !o[key].is_string()) {
    return absl::InvalidArgumentError(fmt::format("'{}' must be a decimal string", key));
  }
  return Decimal::Parse(o[key].get<std::string>());
}

absl::StatusOr<EvaluationUnit> UnitFromJson(const Json& o) {
  for (const char* key : {"unit_id", "base_id", "base_text", "family"}) {
    if (!o.contains(key) || !o[key].is_string()) {
      return absl::InvalidArgumentError(fmt::format("missing string '{}'", key));
    }
  }
  if (!o.contains("target_span") || !o["target_span"].is_array() ||
      o["target_span"].size() != 2 || !o["target_span"][0].is_number_unsigned() ||
      !o["target_span"][1].is_number_unsigned()) {
    return absl::InvalidArgumentError("target_span must be [start, end]");
  }
  if (!o.contains("variants") || !o["variants"].is_array()) {
    return absl::InvalidArgumentError("missing 'variants' array");
  }
  EvaluationUnit unit;
  unit.unit_id = o["unit_id"].get<std::string>();
  unit.base_id = o["base_id"].get<std::string>();
  unit.base_text = o["base_text"].get<std::string>();
  unit.target_index = o.value("target_index", size_t{0});
  const Span span{o["target_span"][0].get<size_t>(), o["target_span"][1].get<size_t>()};
  if (span.start >= span.end || span.end > unit.base_text.size()) {
    return absl::InvalidArgumentError("target_span outside base_text");
  }
  absl::StatusOr<NumeralMention> target =
      ParseMention(std::string_view(unit.base_text).substr(span.start, span.size()));
  if (!target.ok()) return target.status();
  unit.target = std::move(*target);
  unit.target.span = span;
  if (o.contains("category") && o.contains("subcategory") && o["category"].is_string() &&
      o["subcategory"].is_string()) {
    absl::StatusOr<FinNumLabel> label =
        ParseLabel(o["category"].get<std::string>(), o["subcategory"].get<std::string>());
    if (!label.ok()) return label.status();
    unit.target.label = *label;
  }
  absl::StatusOr<Family> family = ParseFamily(o["family"].get<std::string>());
  if (!family.ok()) return family.status();
  if (*family == Family::kRuleBased) {
    if (!o.contains("rule") || !o["rule"].is_string()) {
      return absl::InvalidArgumentError("rule_based unit needs a 'rule'");
    }
    absl::StatusOr<Rule> rule = ParseRule(o["rule"].get<std::string>());
    if (!rule.ok()) return rule.status();
    unit.spec = AugmentationSpec::ForRule(*rule);
  } else {
    unit.spec = AugmentationSpec::Random();
  }
  if (o.contains("k") && o["k"].is_number_integer()) unit.spec.k = o["k"].get<int>();
  const size_t fixed = unit.base_text.size() - span.size();
  for (const Json& vj : o["variants"]) {
    if (!vj.is_object() || !vj.contains("text") || !vj["text"].is_string()) {
      return absl::InvalidArgumentError("variant needs a 'text'");
    }
    Variant v;
    v.text = vj["text"].get<std::string>();
    absl::StatusOr<Decimal> value = JsonDecimal(vj, "value");
    if (!value.ok()) return value.status();
    v.value = *value;
    if (v.text.size() <= fixed) return absl::InvalidArgumentError("variant text too short");
    v.surface = v.text.substr(span.start, v.text.size() - fixed);
    absl::StatusOr<NumeralMention> parsed = ParseMention(v.surface);
    v.style = parsed.ok() ? parsed->style : unit.target.style;
    if (vj.contains("distance")) {
      absl::StatusOr<Decimal> d = JsonDecimal(vj, "distance");
      if (!d.ok()) return d.status();
      v.distance = *d;
    }
    if (vj.contains("validity")) {
      if (!vj["validity"].is_number()) return absl::InvalidArgumentError("validity must be a number");
      v.validity = vj["validity"].get<double>();
    }
    unit.variants.push_back(std::move(v));
  }
  if (o.contains("warnings") && o["warnings"].is_array()) {
    for (const Json& w : o["warnings"]) {
      if (w.is_string()) unit.warnings.push_back(w.get<std::string>());
    }
  }
  return unit;
}

}  // namespace

std::string_view FamilyName(Family family) {
  return family == Family::kRandom ? "random" : "rule_based";
}

absl::StatusOr<Family> ParseFamily(std::string_view name) {
  const std::string folded = ToLower(Strip(name));
  if (folded == "random") return Family::kRandom;
  if (folded == "rule_based" || folded == "rule-based" || folded == "rule") {
    return Family::kRuleBased;
  }
  return absl::InvalidArgumentError(fmt::format("unknown augmentation family '{}'", name));
}

std::string_view RuleName(Rule rule) {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "?";
}

absl::StatusOr<Rule> ParseRule(std::string_view name) {
  const std::string folded = ToLower(Strip(name));
  for (const auto& [r, n] : kRuleNames) {
    if (ToLower(n) == folded) return r;
  }
  return absl::InvalidArgumentError(fmt::format("unknown rule '{}'", name));
}

int RuleVariantCount(Rule rule) {
  switch (rule) {
    case Rule::kMillionToBillion:
      return 1;
    case Rule::kLastDigitEdit:
      return 2;
    default:
      return 9;
  }
}

bool RuleApplies(Rule rule, const NumeralMention& m) {
  switch (rule) {
    case Rule::kDateShift:
      return m.kind() == NumeralKind::kDate || IsYearField(m);
    case Rule::kDurationConvert:
      return m.kind() == NumeralKind::kDuration;
    case Rule::kExtraDecimal:
      return !IsCalendarKind(m) && m.style.decimals <= 2;
    case Rule::kFractionalShift:
      return !IsCalendarKind(m) && m.value > Decimal::FromInt(0) && m.value < Decimal::FromInt(1);
    case Rule::kScaleChange:
      return IsWholeNumber(m) && !m.value.IsZero();
    case Rule::kMillionToBillion:
      return m.style.scale == ScaleWord::kMillion;
    case Rule::kLastDigitEdit:
      return IsWholeNumber(m) && m.value.Abs() >= Decimal::FromInt(10);
  }
  return false;
}

GenerationResult RandomAugment(const NumeralMention& mention, Rng& rng) {
  Collector c(mention);
  int failures = 0;
  while (c.size() < static_cast<size_t>(kRandomVariantCount) && failures < kMaxRedraws) {
    std::optional<Decimal> v = DrawRandom(mention, rng);
    if (!v || !c.AddByValue(*v, mention.style)) ++failures;
  }
  GenerationResult& result = c.result();
  if (result.renditions.size() < static_cast<size_t>(kRandomVariantCount)) {
    result.warnings.push_back(fmt::format("only {} distinct random values after {} redraws",
                                          result.renditions.size(), kMaxRedraws));
  }
  return std::move(result);
}

absl::StatusOr<GenerationResult> ApplyRule(const NumeralMention& mention, Rule rule, Rng& rng) {
  if (!RuleApplies(rule, mention)) {
    return absl::InvalidArgumentError(
        fmt::format("{} does not apply to '{}'", RuleName(rule), mention.surface));
  }
  GenerationResult result;
  switch (rule) {
    case Rule::kDateShift:
      result = DateShift(mention, rng);
      break;
    case Rule::kDurationConvert:
      result = DurationConvert(mention);
      break;
    case Rule::kExtraDecimal:
      result = ExtraDecimal(mention);
      break;
    case Rule::kFractionalShift:
      result = FractionalShift(mention, rng);
      break;
    case Rule::kScaleChange:
      result = ScaleChange(mention);
      break;
    case Rule::kMillionToBillion:
      result = MillionToBillion(mention);
      break;
    case Rule::kLastDigitEdit:
      result = LastDigitEdit(mention);
      break;
  }
  const size_t k = static_cast<size_t>(RuleVariantCount(rule));
  if (result.renditions.size() > k) result.renditions.resize(k);
  if (result.renditions.size() < k) {
    result.warnings.push_back(
        fmt::format("{} produced {} of {} variants", RuleName(rule), result.renditions.size(), k));
  }
  return result;
}

std::string UnitId(std::string_view base_id, size_t mention_index, const AugmentationSpec& spec) {
  if (spec.family == Family::kRandom) return fmt::format("{}#{}#random", base_id, mention_index);
  return fmt::format("{}#{}#rule:{}", base_id, mention_index, RuleName(*spec.rule));
}

void GenerateVariants(EvaluationUnit& unit, uint64_t seed) {
  Rng rng = Rng::ForStream(seed, unit.unit_id);
  GenerationResult result;
  if (unit.spec.family == Family::kRandom) {
    result = RandomAugment(unit.target, rng);
  } else {
    absl::StatusOr<GenerationResult> r = ApplyRule(unit.target, *unit.spec.rule, rng);
    if (!r.ok()) {
      unit.warnings.push_back(Message(r.status()));
      return;
    }
    result = std::move(*r);
  }
  unit.variants.clear();
  for (Rendition& r : result.renditions) {
    Variant v;
    v.text = Substitute(unit.base_text, unit.target.span, r.surface);
    v.surface = std::move(r.surface);
    v.value = r.value;
    v.style = std::move(r.style);
    unit.variants.push_back(std::move(v));
  }
  for (std::string& w : result.warnings) unit.warnings.push_back(std::move(w));
}

std::vector<EvaluationUnit> MakeUnits(const Corpus& corpus, const MakeUnitsOptions& options) {
  std::vector<EvaluationUnit> units;
  for (const BaseSentence& s : corpus) {
    for (size_t i = 0; i < s.mentions.size(); ++i) {
      const NumeralMention& m = s.mentions[i];
      if (!m.label) continue;
      std::vector<AugmentationSpec> specs;
      if (options.families.contains(Family::kRandom)) specs.push_back(AugmentationSpec::Random());
      if (options.families.contains(Family::kRuleBased)) {
        for (Rule rule : kAllRules) {
          if (options.rules.contains(rule) && RuleApplies(rule, m)) {
            specs.push_back(AugmentationSpec::ForRule(rule));
          }
        }
      }
      for (const AugmentationSpec& spec : specs) {
        EvaluationUnit unit;
        unit.unit_id = UnitId(s.id, i, spec);
        unit.base_id = s.id;
        unit.base_text = s.text;
        unit.target_index = i;
        unit.target = m;
        unit.spec = spec;
        units.push_back(std::move(unit));
      }
    }
  }
  const size_t workers = static_cast<size_t>(std::max(1, options.workers));
  if (workers == 1 || units.size() < 2) {
    for (EvaluationUnit& u : units) GenerateVariants(u, options.seed);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < std::min(workers, units.size()); ++w) {
      pool.emplace_back([&]() {
        for (size_t i = next++; i < units.size(); i = next++) {
          GenerateVariants(units[i], options.seed);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  std::erase_if(units, [](const EvaluationUnit& u) { return u.variants.empty(); });
  return units;
}

std::string SerializeUnit(const EvaluationUnit& unit) {
  Json o;
  o["unit_id"] = unit.unit_id;
  o["base_id"] = unit.base_id;
  o["base_text"] = unit.base_text;
  o["target_index"] = unit.target_index;
  o["target_span"] = {unit.target.span.start, unit.target.span.end};
  o["target"] = unit.target.surface;
  o["base_value"] = unit.target.value.ToString();
  if (unit.target.label) {
    o["category"] = std::string(CategoryName(unit.target.label->category));
    o["subcategory"] = std::string(SubcategoryName(unit.target.label->subcategory));
  }
  o["family"] = std::string(FamilyName(unit.spec.family));
  o["rule"] = unit.spec.rule ? Json(std::string(RuleName(*unit.spec.rule))) : Json(nullptr);
  o["k"] = unit.spec.k;
  Json variants = Json::array();
  for (const Variant& v : unit.variants) variants.push_back(VariantToJson(v));
  o["variants"] = std::move(variants);
  if (!unit.warnings.empty()) o["warnings"] = unit.warnings;
  return o.dump();
}

std::string SerializeUnits(const std::vector<EvaluationUnit>& units) {
  std::string out;
  for (const EvaluationUnit& u : units) {
    out += SerializeUnit(u);
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<std::vector<EvaluationUnit>> ParseUnits(std::string_view content) {
  std::vector<EvaluationUnit> units;
  std::set<std::string> seen;
  size_t line_no = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_no;
    if (Strip(line).empty()) continue;
    Json o = Json::parse(line, nullptr, false);
    if (o.is_discarded() || !o.is_object()) return LineError(line_no, "malformed JSON");
    absl::StatusOr<EvaluationUnit> unit = UnitFromJson(o);
    if (!unit.ok()) return LineError(line_no, Message(unit.status()));
    if (!seen.insert(unit->unit_id).second) {
      return LineError(line_no, fmt::format("duplicate unit_id '{}'", unit->unit_id));
    }
    units.push_back(std::move(*unit));
  }
  return units;
}

}  // namespace numprobe
