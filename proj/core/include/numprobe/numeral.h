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

// Numeral extraction, value parsing and style-preserving rendering.
//
// A mention is one numeral occurrence in a sentence. Its value is the
// surface magnitude: "15%", "15M" and "$15" all have value 15. Dates take
// the day index since 1970-01-01 and clock times the minutes since midnight,
// so absolute differences read as "days apart" and "minutes apart".
//
// The accepted grammar is documented in docs/grammar.md.

#ifndef NUMPROBE_NUMERAL_H_
#define NUMPROBE_NUMERAL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "numprobe/decimal.h"
#include "numprobe/finnum.h"

namespace numprobe {

enum class NumeralKind { kCardinal, kPercentage, kMonetary, kDate, kTime, kDuration };

std::string_view NumeralKindName(NumeralKind kind);

enum class ScaleWord { kNone, kMillion, kBillion };

enum class DurationUnit { kMinute, kHour, kDay, kWeek, kMonth, kYear };

enum class DateOrder {
  kMonthDayYear,  // Sep. 28, 2025
  kDayMonthYear,  // 28 September 2025
  kIso,           // 2025-09-28
  kSlash,         // 9/28/2025, 11/14
};

enum class MonthForm { kFull, kAbbrev, kSept };

enum class Meridiem { kNone, kUpper, kLower, kUpperDotted, kLowerDotted };

// Everything needed to re-render a value the way the source wrote it.
struct NumberStyle {
  NumeralKind kind = NumeralKind::kCardinal;

  // Plain numbers (cardinal, percentage, monetary, duration).
  bool explicit_plus = false;
  bool sign_after_currency = false;  // "$-5" rather than "-$5"
  std::string currency;              // "$", "US$", "€", "£", "¥"
  bool thousands_separators = false;
  int min_integer_digits = 1;  // > 1 only for zero-padded forms like "05"
  int decimals = 0;
  ScaleWord scale = ScaleWord::kNone;
  std::string scale_text;  // "million", "Billion", "M", "B"
  std::string scale_gap;   // " " or ""
  std::string percent_text;  // "%" or "percent"; empty when not a percentage
  std::string percent_gap;   // " " or ""
  DurationUnit unit = DurationUnit::kDay;
  std::string unit_gap;  // " " or "-"

  // Dates.
  DateOrder date_order = DateOrder::kMonthDayYear;
  MonthForm month_form = MonthForm::kFull;
  bool month_upper = false;
  bool month_period = false;
  bool ordinal_day = false;
  bool has_year = true;
  std::string year_gap = ", ";  // between day and year in month-day-year
  int month_width = 1;          // numeric forms: 1 or 2 (zero padded)
  int day_width = 1;
  int year_digits = 4;  // numeric slash form: 2 or 4

  // Clock times.
  int hour_width = 1;
  std::optional<int> seconds;
  Meridiem meridiem = Meridiem::kNone;
  std::string meridiem_gap;
};

struct Span {
  size_t start = 0;
  size_t end = 0;  // exclusive

  size_t size() const { return end - start; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct NumeralMention {
  Span span;             // byte offsets into the sentence
  std::string surface;   // text[span]
  std::string raw;       // numeric core: "1,000", "-3.56"; dates/times: surface
  Decimal value;         // surface magnitude
  NumberStyle style;
  std::optional<FinNumLabel> label;

  NumeralKind kind() const { return style.kind; }
};

// A syntactic numeral shape found by the scanner. Date and time shapes are
// reported even when they are not valid calendar values ("February 31",
// "9:75"); `status` says why such a candidate has no value.
struct Candidate {
  Span span;
  NumeralKind kind = NumeralKind::kCardinal;
  absl::Status status;
  std::optional<NumeralMention> mention;  // set iff status.ok()
};

// Leftmost-longest scan. Invalid date/time shapes win over the shorter
// number fragments they contain.
std::vector<Candidate> ScanCandidates(std::string_view text);

// Valid mentions ordered by span start. An invalid date or time shape
// degrades to whatever plain numbers it contains.
std::vector<NumeralMention> ExtractNumerals(std::string_view text);

// Parses a string that must be exactly one mention.
absl::StatusOr<NumeralMention> ParseMention(std::string_view surface);

// Value of a numeric core or a full surface ("15M" -> 15, "1,000" -> 1000).
absl::StatusOr<Decimal> ParseValue(std::string_view raw);

// Inverse of parsing: renders `value` in `style`. Fails when the value
// cannot be written in that style (too many decimals, day outside the
// reference year for year-less dates, time outside one day).
absl::StatusOr<std::string> RenderNumber(const Decimal& value, const NumberStyle& style);

// Replaces mention.span in `text` with `replacement`.
std::string Substitute(std::string_view text, const Span& span, std::string_view replacement);

// Value with scale words and duration units applied: "110 million" ->
// 110000000, "1 week" -> 10080 (minutes). Dates, times and plain numbers are
// returned unchanged.
Decimal UnitNormalizedValue(const Decimal& value, const NumberStyle& style);

// Length of a duration unit in minutes (month = 30 days, year = 365 days).
int64_t DurationUnitMinutes(DurationUnit unit);
std::string_view DurationUnitName(DurationUnit unit);

// Reference year for dates written without one (a leap year).
inline constexpr int kReferenceYear = 2000;

// Day index (days since 1970-01-01) of a civil date, if it exists.
std::optional<int64_t> DayIndex(int year, int month, int day);

}  // namespace numprobe

#endif  // NUMPROBE_NUMERAL_H_
