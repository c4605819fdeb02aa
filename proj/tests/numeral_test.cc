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

#include <gtest/gtest.h>

#include <string>
#include <vector>

namespace numprobe {
namespace {

Decimal D(std::string_view s) { return *Decimal::Parse(s); }

NumeralMention Only(std::string_view text) {
  std::vector<NumeralMention> m = ExtractNumerals(text);
  EXPECT_EQ(m.size(), 1u) << text;
  return m.empty() ? NumeralMention{} : m.front();
}

TEST(ExtractTest, PercentageMention) {
  const NumeralMention m = Only("Revenue increased by 3.56%.");
  EXPECT_EQ(m.raw, "3.56");
  EXPECT_EQ(m.surface, "3.56%");
  EXPECT_EQ(m.value, D("3.56"));
  EXPECT_EQ(m.kind(), NumeralKind::kPercentage);
  EXPECT_EQ(m.style.decimals, 2);
}

TEST(ExtractTest, DateIsOneMention) {
  const NumeralMention m = Only("The merger closed on Sep. 28, 2025 after review.");
  EXPECT_EQ(m.kind(), NumeralKind::kDate);
  EXPECT_EQ(m.surface, "Sep. 28, 2025");
  EXPECT_EQ(m.value, Decimal::FromInt(*DayIndex(2025, 9, 28)));
}

TEST(ExtractTest, NoNumerals) { EXPECT_TRUE(ExtractNumerals("no numbers here").empty()); }

TEST(ExtractTest, MentionsAreOrderedAndDisjoint) {
  const std::string text = "Sales fell 8% to $450 million at 10:30 AM on 2024-03-01, a 1,000 unit drop.";
  const std::vector<NumeralMention> m = ExtractNumerals(text);
  ASSERT_EQ(m.size(), 5u);
  EXPECT_EQ(m[0].kind(), NumeralKind::kPercentage);
  EXPECT_EQ(m[1].kind(), NumeralKind::kMonetary);
  EXPECT_EQ(m[1].style.scale, ScaleWord::kMillion);
  EXPECT_EQ(m[1].value, D("450"));
  EXPECT_EQ(m[2].kind(), NumeralKind::kTime);
  EXPECT_EQ(m[2].value, Decimal::FromInt(10 * 60 + 30));
  EXPECT_EQ(m[3].kind(), NumeralKind::kDate);
  EXPECT_EQ(m[4].value, D("1000"));
  for (size_t i = 0; i < m.size(); ++i) {
    EXPECT_EQ(text.substr(m[i].span.start, m[i].span.size()), m[i].surface);
    if (i > 0) {
      EXPECT_LE(m[i - 1].span.end, m[i].span.start);
    }
  }
}

TEST(ExtractTest, RangeEndpointsAreSeparate) {
  const std::vector<NumeralMention> m = ExtractNumerals("shares traded between $6.02 to $14");
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].value, D("6.02"));
  EXPECT_EQ(m[1].value, D("14"));
}

TEST(ExtractTest, DurationsCarryTheirUnit) {
  const NumeralMention m = Only("Shipments arrive within 1 week.");
  EXPECT_EQ(m.kind(), NumeralKind::kDuration);
  EXPECT_EQ(m.style.unit, DurationUnit::kWeek);
  EXPECT_EQ(m.value, D("1"));
}

TEST(ParseValueTest, SurfaceMagnitude) {
  EXPECT_EQ(*ParseValue("15M"), D("15"));
  EXPECT_EQ(*ParseValue("15%"), D("15"));
  EXPECT_EQ(*ParseValue("1,000"), D("1000"));
  EXPECT_EQ(*ParseValue("0"), D("0"));
  EXPECT_EQ(*ParseValue("$110 million"), D("110"));
  EXPECT_EQ(*ParseValue("-3.56"), D("-3.56"));
}

TEST(ParseValueTest, UnparseableNamesInput) {
  const absl::StatusOr<Decimal> v = ParseValue("twelve");
  ASSERT_FALSE(v.ok());
  EXPECT_NE(std::string(v.status().message().data(), v.status().message().size()).find("twelve"),
            std::string::npos);
}

TEST(ParseMentionTest, InvalidCalendarValuesAreRejected) {
  EXPECT_FALSE(ParseMention("February 31st").ok());
  EXPECT_FALSE(ParseMention("9:4 AM").ok());
  EXPECT_FALSE(ParseMention("10:75").ok());
  EXPECT_TRUE(ParseMention("February 28th").ok());
  EXPECT_TRUE(ParseMention("9:04 AM").ok());
}

TEST(ParseMentionTest, ScanReportsInvalidCandidates) {
  bool saw_invalid_date = false;
  for (const Candidate& c : ScanCandidates("Payment is due February 31st.")) {
    if (c.kind == NumeralKind::kDate && !c.status.ok()) saw_invalid_date = true;
  }
  EXPECT_TRUE(saw_invalid_date);
}

TEST(RenderTest, PreservesStyle) {
  EXPECT_EQ(*RenderNumber(D("10000"), ParseMention("1,000")->style), "10,000");
  NumberStyle widened = ParseMention("3.5")->style;
  widened.decimals = 2;
  EXPECT_EQ(*RenderNumber(D("3.56"), widened), "3.56");
  NumberStyle billion = ParseMention("110 million")->style;
  billion.scale = ScaleWord::kBillion;
  billion.scale_text = "billion";
  billion.decimals = 2;
  EXPECT_EQ(*RenderNumber(D("0.11"), billion), "0.11 billion");
  EXPECT_EQ(*RenderNumber(D("-5"), ParseMention("$4")->style), "-$5");
}

TEST(RenderTest, UnrepresentableValueIsAnError) {
  const NumberStyle time = ParseMention("10:30 AM")->style;
  EXPECT_FALSE(RenderNumber(D("-5"), time).ok());
  EXPECT_FALSE(RenderNumber(D("2.5"), time).ok());
}

// Every extracted mention renders back to its own surface text.
TEST(RenderTest, RoundTripOverAssortedSurfaces) {
  const std::vector<std::string> sentences = {
      "Revenue rose 3.56% to $110 million.",
      "It closed at $245.30, up 2.4 percent.",
      "We shipped 12,500 units in 6 months.",
      "Call at 9:15 AM on March 3, 2024.",
      "Notes mature 2030-06-15; coupon 4.25%.",
      "The iPhone 15 sold 1.2B units by 11/14.",
      "Cash of US$3.2 billion, or -$0.52 per share.",
      "It opened at 4:30 p.m. on 28 September 2025.",
      "Sept. 5 saw a 0.8% dip over 2 weeks.",
  };
  for (const std::string& s : sentences) {
    for (const NumeralMention& m : ExtractNumerals(s)) {
      absl::StatusOr<std::string> r = RenderNumber(m.value, m.style);
      ASSERT_TRUE(r.ok()) << m.surface;
      EXPECT_EQ(*r, m.surface) << s;
      absl::StatusOr<NumeralMention> back = ParseMention(m.surface);
      ASSERT_TRUE(back.ok()) << m.surface;
      EXPECT_EQ(back->value, m.value);
    }
  }
}

TEST(SubstituteTest, OnlyTheSpanChanges) {
  const std::string text = "Revenue increased by 3.56% in Q3.";
  const NumeralMention m = Only(text);
  const std::string out = Substitute(text, m.span, "4.00%");
  EXPECT_EQ(out, "Revenue increased by 4.00% in Q3.");
  const std::vector<NumeralMention> again = ExtractNumerals(out);
  ASSERT_FALSE(again.empty());
  EXPECT_EQ(again[0].span.start, m.span.start);
  EXPECT_EQ(again[0].value, D("4"));
}

TEST(UnitNormalizedTest, AppliesScaleAndDuration) {
  const NumeralMention m = *ParseMention("110 million");
  EXPECT_EQ(UnitNormalizedValue(m.value, m.style), D("110000000"));
  const NumeralMention w = *ParseMention("1 week");
  EXPECT_EQ(UnitNormalizedValue(w.value, w.style), Decimal::FromInt(7 * 24 * 60));
  EXPECT_EQ(DurationUnitMinutes(DurationUnit::kDay), 24 * 60);
}

TEST(DayIndexTest, CalendarRules) {
  EXPECT_EQ(DayIndex(1970, 1, 1), 0);
  EXPECT_EQ(DayIndex(2000, 3, 1).value() - DayIndex(2000, 2, 28).value(), 2);
  EXPECT_FALSE(DayIndex(2023, 2, 29).has_value());
  EXPECT_FALSE(DayIndex(2024, 4, 31).has_value());
  EXPECT_FALSE(DayIndex(2024, 13, 1).has_value());
}

}  // namespace
}  // namespace numprobe
