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

#include "numprobe/numeral.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <utility>

#include "fmt/format.h"
#include "text_util.h"

namespace numprobe {
namespace {

namespace chrono = std::chrono;

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool BoundaryBefore(std::string_view text, size_t p) {
  return p == 0 || !IsAlnum(text[p - 1]);
}

bool BoundaryAfter(std::string_view text, size_t e) {
  return e >= text.size() || !IsAlnum(text[e]);
}

size_t DigitRun(std::string_view text, size_t i) {
  size_t n = 0;
  while (i + n < text.size() && IsDigit(text[i + n])) ++n;
  return n;
}

int ToInt(std::string_view digits) {
  int v = 0;
  for (char c : digits) v = v * 10 + (c - '0');
  return v;
}

bool StartsWithAt(std::string_view text, size_t i, std::string_view prefix) {
  return text.substr(i).substr(0, prefix.size()) == prefix;
}

constexpr std::array<std::string_view, 12> kMonthFull = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

constexpr std::array<std::string_view, 5> kCurrencies = {"US$", "$", "\xE2\x82\xAC",
                                                         "\xC2\xA3", "\xC2\xA5"};

struct UnitWord {
  DurationUnit unit;
  std::string_view singular;
  std::string_view plural;
};

constexpr std::array<UnitWord, 6> kUnitWords = {{
    {DurationUnit::kMinute, "minute", "minutes"},
    {DurationUnit::kHour, "hour", "hours"},
    {DurationUnit::kDay, "day", "days"},
    {DurationUnit::kWeek, "week", "weeks"},
    {DurationUnit::kMonth, "month", "months"},
    {DurationUnit::kYear, "year", "years"},
}};

// One alternative recognized at a start position.
struct Match {
  size_t end = 0;
  NumeralKind kind = NumeralKind::kCardinal;
  absl::Status status;
  NumberStyle style;
  Decimal value;
  std::string raw;
};

struct MonthWord {
  int month = 0;
  size_t end = 0;
  MonthForm form = MonthForm::kFull;
  bool upper = false;
  bool period = false;
};

std::string MonthText(int month, MonthForm form, bool upper) {
  std::string name(kMonthFull[month - 1]);
  if (form == MonthForm::kSept && month == 9) {
    name = "Sept";
  } else if (form != MonthForm::kFull) {
    name = name.substr(0, 3);
  }
  if (upper) name = ToUpper(name);
  return name;
}

std::optional<MonthWord> MatchMonthWord(std::string_view text, size_t p) {
  if (p >= text.size() || !BoundaryBefore(text, p)) return std::nullopt;
  // Every month spelling starts with one of these capitals.
  if (std::string_view("ADFJMNOS").find(text[p]) == std::string_view::npos) return std::nullopt;
  std::optional<MonthWord> best;
  for (int m = 1; m <= 12; ++m) {
    for (MonthForm form : {MonthForm::kFull, MonthForm::kSept, MonthForm::kAbbrev}) {
      if (form == MonthForm::kSept && m != 9) continue;
      for (bool upper : {false, true}) {
        const std::string word = MonthText(m, form, upper);
        if (!StartsWithAt(text, p, word)) continue;
        size_t end = p + word.size();
        if (end < text.size() && IsAlpha(text[end])) continue;
        if (best && best->end >= end) continue;
        best = MonthWord{m, end, form, upper, false};
      }
    }
  }
  if (best && best->form != MonthForm::kFull && best->end < text.size() &&
      text[best->end] == '.') {
    best->period = true;
    ++best->end;
  }
  return best;
}

int DaysInMonth(int year, int month) {
  const chrono::year_month_day_last ymdl{chrono::year{year} / chrono::month{static_cast<unsigned>(month)} /
                                         chrono::last};
  return static_cast<int>(static_cast<unsigned>(ymdl.day()));
}

std::string_view OrdinalSuffix(int day) {
  if (day % 100 >= 11 && day % 100 <= 13) return "th";
  switch (day % 10) {
    case 1:
      return "st";
    case 2:
      return "nd";
    case 3:
      return "rd";
    default:
      return "th";
  }
}

// Reads a day-of-month token (1-2 digits, optional ordinal suffix) at i.
// Returns the end offset or nullopt.
std::optional<size_t> ReadDay(std::string_view text, size_t i, int* day, bool* ordinal) {
  const size_t n = DigitRun(text, i);
  if (n < 1 || n > 2) return std::nullopt;
  *day = ToInt(text.substr(i, n));
  size_t end = i + n;
  *ordinal = false;
  if (end + 2 <= text.size() && IsAlpha(text[end])) {
    const std::string_view suffix = text.substr(end, 2);
    if (suffix != OrdinalSuffix(*day)) return std::nullopt;
    *ordinal = true;
    end += 2;
  }
  if (!BoundaryAfter(text, end)) return std::nullopt;
  return end;
}

void FinishDate(Match& m, int year, int month, int day) {
  m.kind = NumeralKind::kDate;
  m.style.kind = NumeralKind::kDate;
  if (month < 1 || month > 12) {
    m.status = absl::InvalidArgumentError(fmt::format("month {} out of range", month));
    return;
  }
  std::optional<int64_t> idx = DayIndex(year, month, day);
  if (!idx) {
    m.status = absl::InvalidArgumentError(fmt::format(
        "{} {} does not exist in {}", kMonthFull[month - 1], day, year));
    return;
  }
  m.value = Decimal::FromInt(*idx);
}

std::optional<Match> MatchMonthDayYear(std::string_view text, size_t p) {
  std::optional<MonthWord> mw = MatchMonthWord(text, p);
  if (!mw) return std::nullopt;
  size_t i = mw->end;
  if (i >= text.size() || text[i] != ' ') return std::nullopt;
  ++i;
  int day = 0;
  bool ordinal = false;
  std::optional<size_t> end = ReadDay(text, i, &day, &ordinal);
  if (!end) return std::nullopt;
  Match m;
  m.style.date_order = DateOrder::kMonthDayYear;
  m.style.month_form = mw->form;
  m.style.month_upper = mw->upper;
  m.style.month_period = mw->period;
  m.style.ordinal_day = ordinal;
  m.style.has_year = false;
  m.end = *end;
  int year = kReferenceYear;
  for (std::string_view gap : {", ", " "}) {
    if (!StartsWithAt(text, *end, gap)) continue;
    const size_t y = *end + gap.size();
    if (DigitRun(text, y) == 4 && BoundaryAfter(text, y + 4)) {
      year = ToInt(text.substr(y, 4));
      m.style.has_year = true;
      m.style.year_gap = std::string(gap);
      m.end = y + 4;
    }
    break;
  }
  FinishDate(m, year, mw->month, day);
  m.raw = std::string(text.substr(p, m.end - p));
  return m;
}

std::optional<Match> MatchDayMonthYear(std::string_view text, size_t p) {
  if (!BoundaryBefore(text, p)) return std::nullopt;
  int day = 0;
  bool ordinal = false;
  std::optional<size_t> end = ReadDay(text, p, &day, &ordinal);
  if (!end || *end >= text.size() || text[*end] != ' ') return std::nullopt;
  std::optional<MonthWord> mw = MatchMonthWord(text, *end + 1);
  if (!mw) return std::nullopt;
  Match m;
  m.style.date_order = DateOrder::kDayMonthYear;
  m.style.month_form = mw->form;
  m.style.month_upper = mw->upper;
  m.style.month_period = mw->period;
  m.style.ordinal_day = ordinal;
  m.style.has_year = false;
  m.end = mw->end;
  int year = kReferenceYear;
  if (StartsWithAt(text, mw->end, " ")) {
    const size_t y = mw->end + 1;
    if (DigitRun(text, y) == 4 && BoundaryAfter(text, y + 4)) {
      year = ToInt(text.substr(y, 4));
      m.style.has_year = true;
      m.end = y + 4;
    }
  }
  FinishDate(m, year, mw->month, day);
  m.raw = std::string(text.substr(p, m.end - p));
  return m;
}

std::optional<Match> MatchIsoDate(std::string_view text, size_t p) {
  if (!BoundaryBefore(text, p)) return std::nullopt;
  if (DigitRun(text, p) != 4 || !StartsWithAt(text, p + 4, "-") ||
      DigitRun(text, p + 5) != 2 || !StartsWithAt(text, p + 7, "-") ||
      DigitRun(text, p + 8) != 2) {
    return std::nullopt;
  }
  const size_t end = p + 10;
  if (!BoundaryAfter(text, end)) return std::nullopt;
  Match m;
  m.end = end;
  m.style.date_order = DateOrder::kIso;
  m.style.month_width = 2;
  m.style.day_width = 2;
  FinishDate(m, ToInt(text.substr(p, 4)), ToInt(text.substr(p + 5, 2)),
             ToInt(text.substr(p + 8, 2)));
  m.raw = std::string(text.substr(p, end - p));
  return m;
}

std::optional<Match> MatchSlashDate(std::string_view text, size_t p) {
  if (!BoundaryBefore(text, p)) return std::nullopt;
  const size_t mn = DigitRun(text, p);
  if (mn < 1 || mn > 2 || !StartsWithAt(text, p + mn, "/")) return std::nullopt;
  const size_t d = p + mn + 1;
  const size_t dn = DigitRun(text, d);
  if (dn < 1 || dn > 2) return std::nullopt;
  Match m;
  m.style.date_order = DateOrder::kSlash;
  m.style.month_width = static_cast<int>(mn);
  m.style.day_width = static_cast<int>(dn);
  m.style.has_year = false;
  m.end = d + dn;
  int year = kReferenceYear;
  if (StartsWithAt(text, m.end, "/")) {
    const size_t y = m.end + 1;
    const size_t yn = DigitRun(text, y);
    if (yn != 2 && yn != 4) return std::nullopt;
    year = ToInt(text.substr(y, yn));
    if (yn == 2) year += 2000;
    m.style.has_year = true;
    m.style.year_digits = static_cast<int>(yn);
    m.end = y + yn;
  }
  if (!BoundaryAfter(text, m.end) || StartsWithAt(text, m.end, "/")) return std::nullopt;
  FinishDate(m, year, ToInt(text.substr(p, mn)), ToInt(text.substr(d, dn)));
  m.raw = std::string(text.substr(p, m.end - p));
  return m;
}

struct MeridiemText {
  Meridiem form;
  std::string_view am;
  std::string_view pm;
};

constexpr std::array<MeridiemText, 4> kMeridiems = {{
    {Meridiem::kUpperDotted, "A.M.", "P.M."},
    {Meridiem::kLowerDotted, "a.m.", "p.m."},
    {Meridiem::kUpper, "AM", "PM"},
    {Meridiem::kLower, "am", "pm"},
}};

std::optional<Match> MatchTime(std::string_view text, size_t p) {
  if (!BoundaryBefore(text, p)) return std::nullopt;
  const size_t hn = DigitRun(text, p);
  if (hn < 1 || hn > 2 || !StartsWithAt(text, p + hn, ":")) return std::nullopt;
  const size_t mi = p + hn + 1;
  if (DigitRun(text, mi) != 2) return std::nullopt;
  Match m;
  m.kind = NumeralKind::kTime;
  m.style.kind = NumeralKind::kTime;
  m.style.hour_width = static_cast<int>(hn);
  const int hour = ToInt(text.substr(p, hn));
  const int minute = ToInt(text.substr(mi, 2));
  int second = 0;
  m.end = mi + 2;
  if (StartsWithAt(text, m.end, ":") && DigitRun(text, m.end + 1) == 2) {
    second = ToInt(text.substr(m.end + 1, 2));
    m.style.seconds = second;
    m.end += 3;
  }
  if (DigitRun(text, m.end) > 0) return std::nullopt;
  bool pm = false;
  auto read_meridiem = [&]() {
    for (std::string_view gap : {"", " "}) {
      if (!StartsWithAt(text, m.end, gap)) continue;
      for (const MeridiemText& mt : kMeridiems) {
        for (bool is_pm : {false, true}) {
          const std::string_view word = is_pm ? mt.pm : mt.am;
          const size_t e = m.end + gap.size() + word.size();
          if (!StartsWithAt(text, m.end + gap.size(), word)) continue;
          const bool dotted =
              mt.form == Meridiem::kUpperDotted || mt.form == Meridiem::kLowerDotted;
          if (!dotted && !BoundaryAfter(text, e)) continue;
          m.style.meridiem = mt.form;
          m.style.meridiem_gap = std::string(gap);
          m.end = e;
          pm = is_pm;
          return;
        }
      }
    }
  };
  read_meridiem();
  if (!BoundaryAfter(text, m.end)) return std::nullopt;
  m.raw = std::string(text.substr(p, m.end - p));
  const bool twelve_hour = m.style.meridiem != Meridiem::kNone;
  if (twelve_hour ? (hour < 1 || hour > 12) : hour > 23) {
    m.status = absl::InvalidArgumentError(fmt::format("hour {} out of range", hour));
  } else if (minute > 59) {
    m.status = absl::InvalidArgumentError(fmt::format("minute {} out of range", minute));
  } else if (second > 59) {
    m.status = absl::InvalidArgumentError(fmt::format("second {} out of range", second));
  } else {
    int h24 = hour;
    if (twelve_hour) h24 = (hour % 12) + (pm ? 12 : 0);
    m.value = Decimal::FromInt(h24 * 60 + minute);
  }
  return m;
}

bool IsSignContext(std::string_view text, size_t p) {
  if (p == 0) return true;
  const char prev = text[p - 1];
  return std::isspace(static_cast<unsigned char>(prev)) || prev == '(' ||
         prev == '[' || prev == '"' || prev == '\'';
}

std::optional<Match> MatchNumber(std::string_view text, size_t p) {
  size_t i = p;
  Match m;
  char sign = 0;
  if ((text[i] == '-' || text[i] == '+') && IsSignContext(text, p)) {
    sign = text[i];
    ++i;
  }
  for (std::string_view cur : kCurrencies) {
    if (StartsWithAt(text, i, cur)) {
      if (sign == 0 && !BoundaryBefore(text, p)) return std::nullopt;
      m.style.currency = std::string(cur);
      i += cur.size();
      break;
    }
  }
  if (!m.style.currency.empty() && sign == 0 && i < text.size() && text[i] == '-') {
    sign = '-';
    m.style.sign_after_currency = true;
    ++i;
  }
  const size_t digits_start = i;
  if (sign == 0 && m.style.currency.empty() && !BoundaryBefore(text, p)) return std::nullopt;
  const size_t lead = DigitRun(text, i);
  if (lead == 0) return std::nullopt;
  std::string plain(text.substr(i, lead));
  i += lead;
  if (lead <= 3) {
    while (i + 4 <= text.size() && text[i] == ',' && DigitRun(text, i + 1) == 3 &&
           DigitRun(text, i + 4) == 0) {
      m.style.thousands_separators = true;
      plain.append(text.substr(i + 1, 3));
      i += 4;
    }
  }
  const std::string_view int_part = plain;
  if (int_part.size() > 1 && int_part.front() == '0') {
    m.style.min_integer_digits = static_cast<int>(int_part.size());
  }
  if (i + 1 < text.size() && text[i] == '.' && IsDigit(text[i + 1])) {
    const size_t frac = DigitRun(text, i + 1);
    m.style.decimals = static_cast<int>(frac);
    plain.push_back('.');
    plain.append(text.substr(i + 1, frac));
    i += 1 + frac;
  }
  if (m.style.thousands_separators) m.style.min_integer_digits = 1;
  m.raw = (sign == '-' ? "-" : sign == '+' ? "+" : "") +
          std::string(text.substr(digits_start, i - digits_start));
  absl::StatusOr<Decimal> value = Decimal::Parse(plain);
  if (!value.ok()) return std::nullopt;
  m.value = sign == '-' ? -*value : *value;
  m.style.explicit_plus = sign == '+';
  m.kind = m.style.currency.empty() ? NumeralKind::kCardinal : NumeralKind::kMonetary;

  bool suffixed = false;
  // Percent.
  if (m.style.currency.empty()) {
    for (std::string_view gap : {"", " "}) {
      if (StartsWithAt(text, i, gap) && StartsWithAt(text, i + gap.size(), "%")) {
        m.style.percent_text = "%";
        m.style.percent_gap = std::string(gap);
        i += gap.size() + 1;
        suffixed = true;
        break;
      }
    }
    if (!suffixed && StartsWithAt(text, i, " percent") && BoundaryAfter(text, i + 8)) {
      m.style.percent_text = "percent";
      m.style.percent_gap = " ";
      i += 8;
      suffixed = true;
    }
    if (suffixed) m.kind = NumeralKind::kPercentage;
  }
  // Scale word.
  if (!suffixed) {
    static constexpr std::array<std::pair<std::string_view, ScaleWord>, 6> kWords = {{
        {"million", ScaleWord::kMillion},
        {"Million", ScaleWord::kMillion},
        {"MILLION", ScaleWord::kMillion},
        {"billion", ScaleWord::kBillion},
        {"Billion", ScaleWord::kBillion},
        {"BILLION", ScaleWord::kBillion},
    }};
    for (const auto& [word, scale] : kWords) {
      if (StartsWithAt(text, i, " ") && StartsWithAt(text, i + 1, word) &&
          BoundaryAfter(text, i + 1 + word.size())) {
        m.style.scale = scale;
        m.style.scale_text = std::string(word);
        m.style.scale_gap = " ";
        i += 1 + word.size();
        suffixed = true;
        break;
      }
    }
    if (!suffixed && i < text.size() && (text[i] == 'M' || text[i] == 'B') &&
        BoundaryAfter(text, i + 1)) {
      m.style.scale = text[i] == 'M' ? ScaleWord::kMillion : ScaleWord::kBillion;
      m.style.scale_text = std::string(1, text[i]);
      i += 1;
      suffixed = true;
    }
  }
  // Duration unit.
  if (!suffixed && m.style.currency.empty()) {
    const bool singular_value = m.value == Decimal::FromInt(1) && m.style.decimals == 0;
    for (std::string_view gap : {" ", "-"}) {
      if (!StartsWithAt(text, i, gap)) continue;
      for (const UnitWord& u : kUnitWords) {
        const bool singular = gap == "-" || singular_value;
        const std::string_view word = singular ? u.singular : u.plural;
        if (StartsWithAt(text, i + gap.size(), word) &&
            BoundaryAfter(text, i + gap.size() + word.size())) {
          m.style.unit = u.unit;
          m.style.unit_gap = std::string(gap);
          m.kind = NumeralKind::kDuration;
          i += gap.size() + word.size();
          suffixed = true;
          break;
        }
      }
      if (suffixed) break;
    }
  }
  if (!BoundaryAfter(text, i)) return std::nullopt;
  m.style.kind = m.kind;
  m.end = i;
  return m;
}

// All alternatives starting at p, longest first.
std::vector<Match> MatchesAt(std::string_view text, size_t p) {
  std::vector<Match> out;
  for (auto* matcher : {&MatchMonthDayYear, &MatchDayMonthYear, &MatchIsoDate,
                        &MatchSlashDate, &MatchTime, &MatchNumber}) {
    if (std::optional<Match> m = matcher(text, p)) out.push_back(std::move(*m));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Match& a, const Match& b) { return a.end > b.end; });
  return out;
}

NumeralMention ToMention(std::string_view text, size_t p, const Match& m) {
  NumeralMention mention;
  mention.span = {p, m.end};
  mention.surface = std::string(text.substr(p, m.end - p));
  mention.raw = m.raw;
  mention.value = m.value;
  mention.style = m.style;
  return mention;
}

std::string FormatInteger(std::string digits, bool separators) {
  if (!separators) return digits;
  std::string out;
  const int n = static_cast<int>(digits.size());
  for (int k = 0; k < n; ++k) {
    if (k > 0 && (n - k) % 3 == 0) out.push_back(',');
    out.push_back(digits[k]);
  }
  return out;
}

absl::StatusOr<std::string> RenderDate(const Decimal& value, const NumberStyle& style) {
  if (!value.IsInteger()) return absl::InvalidArgumentError("date value must be a whole day index");
  const chrono::sys_days day{chrono::days{value.Truncated()}};
  const chrono::year_month_day ymd{day};
  const int year = static_cast<int>(ymd.year());
  const int month = static_cast<int>(static_cast<unsigned>(ymd.month()));
  const int dom = static_cast<int>(static_cast<unsigned>(ymd.day()));
  if (year < 1 || year > 9999) {
    return absl::OutOfRangeError(fmt::format("year {} not renderable", year));
  }
  if (!style.has_year && year != kReferenceYear) {
    return absl::OutOfRangeError("year-less date shifted outside its reference year");
  }
  auto day_text = [&]() {
    std::string s = fmt::format("{:0{}d}", dom, style.day_width);
    if (style.ordinal_day) s += OrdinalSuffix(dom);
    return s;
  };
  auto month_text = [&]() {
    std::string s = MonthText(month, style.month_form, style.month_upper);
    if (style.month_period && style.month_form != MonthForm::kFull) s.push_back('.');
    return s;
  };
  switch (style.date_order) {
    case DateOrder::kMonthDayYear: {
      std::string s = fmt::format("{} {}", month_text(), day_text());
      if (style.has_year) s += fmt::format("{}{:04d}", style.year_gap, year);
      return s;
    }
    case DateOrder::kDayMonthYear: {
      std::string s = fmt::format("{} {}", day_text(), month_text());
      if (style.has_year) s += fmt::format(" {:04d}", year);
      return s;
    }
    case DateOrder::kIso:
      return fmt::format("{:04d}-{:02d}-{:02d}", year, month, dom);
    case DateOrder::kSlash: {
      std::string s = fmt::format("{:0{}d}/{:0{}d}", month, style.month_width, dom, style.day_width);
      if (style.has_year) {
        if (style.year_digits == 2) {
          if (year < 2000 || year > 2099) {
            return absl::OutOfRangeError("two-digit year outside 2000-2099");
          }
          s += fmt::format("/{:02d}", year - 2000);
        } else {
          s += fmt::format("/{:04d}", year);
        }
      }
      return s;
    }
  }
  return absl::InternalError("unknown date order");
}

absl::StatusOr<std::string> RenderTime(const Decimal& value, const NumberStyle& style) {
  if (!value.IsInteger() || value < Decimal::FromInt(0) || value > Decimal::FromInt(1439)) {
    return absl::OutOfRangeError(
        fmt::format("time value {} is not a minute of the day", value.ToString()));
  }
  const int minutes = static_cast<int>(value.Truncated());
  int hour = minutes / 60;
  const int minute = minutes % 60;
  std::string_view meridiem;
  if (style.meridiem != Meridiem::kNone) {
    for (const MeridiemText& mt : kMeridiems) {
      if (mt.form == style.meridiem) meridiem = hour < 12 ? mt.am : mt.pm;
    }
    hour = hour % 12 == 0 ? 12 : hour % 12;
  }
  std::string s = fmt::format("{:0{}d}:{:02d}", hour, style.hour_width, minute);
  if (style.seconds) s += fmt::format(":{:02d}", *style.seconds);
  if (!meridiem.empty()) s += fmt::format("{}{}", style.meridiem_gap, meridiem);
  return s;
}

}  // namespace

std::string_view NumeralKindName(NumeralKind kind) {
  switch (kind) {
    case NumeralKind::kCardinal:
      return "cardinal";
    case NumeralKind::kPercentage:
      return "percentage";
    case NumeralKind::kMonetary:
      return "monetary";
    case NumeralKind::kDate:
      return "date";
    case NumeralKind::kTime:
      return "time";
    case NumeralKind::kDuration:
      return "duration";
  }
  return "?";
}

std::string_view DurationUnitName(DurationUnit unit) {
  for (const UnitWord& u : kUnitWords) {
    if (u.unit == unit) return u.singular;
  }
  return "?";
}

int64_t DurationUnitMinutes(DurationUnit unit) {
  switch (unit) {
    case DurationUnit::kMinute:
      return 1;
    case DurationUnit::kHour:
      return 60;
    case DurationUnit::kDay:
      return 60 * 24;
    case DurationUnit::kWeek:
      return 60 * 24 * 7;
    case DurationUnit::kMonth:
      return 60 * 24 * 30;
    case DurationUnit::kYear:
      return 60 * 24 * 365;
  }
  return 1;
}

std::optional<int64_t> DayIndex(int year, int month, int day) {
  if (year < 1 || year > 9999 || month < 1 || month > 12 || day < 1) return std::nullopt;
  if (day > DaysInMonth(year, month)) return std::nullopt;
  const chrono::year_month_day ymd{chrono::year{year}, chrono::month{static_cast<unsigned>(month)},
                                   chrono::day{static_cast<unsigned>(day)}};
  return chrono::sys_days{ymd}.time_since_epoch().count();
}

std::vector<Candidate> ScanCandidates(std::string_view text) {
  std::vector<Candidate> out;
  size_t p = 0;
  while (p < text.size()) {
    std::vector<Match> matches = MatchesAt(text, p);
    if (matches.empty()) {
      ++p;
      continue;
    }
    const Match& m = matches.front();
    Candidate c;
    c.span = {p, m.end};
    c.kind = m.kind;
    c.status = m.status;
    if (m.status.ok()) c.mention = ToMention(text, p, m);
    out.push_back(std::move(c));
    p = m.end;
  }
  return out;
}

std::vector<NumeralMention> ExtractNumerals(std::string_view text) {
  std::vector<NumeralMention> out;
  size_t p = 0;
  while (p < text.size()) {
    const std::vector<Match> matches = MatchesAt(text, p);
    auto valid = std::find_if(matches.begin(), matches.end(),
                              [](const Match& m) { return m.status.ok(); });
    if (valid == matches.end()) {
      ++p;
      continue;
    }
    out.push_back(ToMention(text, p, *valid));
    p = valid->end;
  }
  return out;
}

absl::StatusOr<NumeralMention> ParseMention(std::string_view surface) {
  const std::vector<Candidate> candidates = ScanCandidates(surface);
  if (candidates.size() != 1 || candidates[0].span != Span{0, surface.size()}) {
    return absl::InvalidArgumentError(fmt::format("'{}' is not a single numeral", surface));
  }
  if (!candidates[0].status.ok()) {
    return absl::InvalidArgumentError(
        fmt::format("'{}': {}", surface, std::string(candidates[0].status.message())));
  }
  return *candidates[0].mention;
}

absl::StatusOr<Decimal> ParseValue(std::string_view raw) {
  absl::StatusOr<NumeralMention> m = ParseMention(raw);
  if (!m.ok()) return m.status();
  return m->value;
}

absl::StatusOr<std::string> RenderNumber(const Decimal& value, const NumberStyle& style) {
  if (style.kind == NumeralKind::kDate) return RenderDate(value, style);
  if (style.kind == NumeralKind::kTime) return RenderTime(value, style);
  if (value.WithScale(style.decimals) != value) {
    return absl::InvalidArgumentError(fmt::format(
        "{} needs more than {} decimal places", value.ToString(), style.decimals));
  }
  const Decimal fixed = value.WithScale(style.decimals).Abs();
  std::string digits = fixed.ToString();
  std::string int_part = digits;
  std::string frac_part;
  if (const size_t dot = digits.find('.'); dot != std::string::npos) {
    int_part = digits.substr(0, dot);
    frac_part = digits.substr(dot);
  }
  if (static_cast<int>(int_part.size()) < style.min_integer_digits) {
    int_part.insert(0, style.min_integer_digits - int_part.size(), '0');
  }
  std::string number = FormatInteger(int_part, style.thousands_separators) + frac_part;
  std::string sign;
  if (value.IsNegative()) {
    sign = "-";
  } else if (style.explicit_plus && !value.IsZero()) {
    sign = "+";
  }
  std::string out = style.sign_after_currency ? style.currency + sign + number
                                              : sign + style.currency + number;
  if (!style.percent_text.empty()) out += style.percent_gap + style.percent_text;
  if (style.scale != ScaleWord::kNone) out += style.scale_gap + style.scale_text;
  if (style.kind == NumeralKind::kDuration) {
    const bool singular = style.unit_gap == "-" ||
                          (value == Decimal::FromInt(1) && style.decimals == 0);
    for (const UnitWord& u : kUnitWords) {
      if (u.unit == style.unit) {
        out += fmt::format("{}{}", style.unit_gap, singular ? u.singular : u.plural);
      }
    }
  }
  return out;
}

std::string Substitute(std::string_view text, const Span& span, std::string_view replacement) {
  std::string out;
  out.reserve(text.size() - span.size() + replacement.size());
  out.append(text.substr(0, span.start));
  out.append(replacement);
  out.append(text.substr(span.end));
  return out;
}

Decimal UnitNormalizedValue(const Decimal& value, const NumberStyle& style) {
  switch (style.kind) {
    case NumeralKind::kDate:
    case NumeralKind::kTime:
      return value;
    case NumeralKind::kDuration:
      return value * Decimal::FromInt(DurationUnitMinutes(style.unit));
    default:
      break;
  }
  switch (style.scale) {
    case ScaleWord::kMillion:
      return value.ShiftPow10(6);
    case ScaleWord::kBillion:
      return value.ShiftPow10(9);
    case ScaleWord::kNone:
      break;
  }
  return value;
}

}  // namespace numprobe
