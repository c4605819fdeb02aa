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


#include "numprobe/validate.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "test_util.h"
#include "unit_builder.h"

namespace numprobe {
namespace {

using ::numprobe::testing::BuildUnit;

TEST(BuiltinValidateTest, CalendarViolations) {
  const EvaluationUnit feb = BuildUnit("Payment is due February 28th.", Category::kTemporal,
                                       Subcategory::kDate, {"February 31st", "February 27th"});
  std::string reason;
  EXPECT_EQ(BuiltinValidate(feb, 0, &reason), 0.0);
  EXPECT_FALSE(reason.empty());
  EXPECT_EQ(BuiltinValidate(feb, 1, nullptr), 1.0);

  const EvaluationUnit clock = BuildUnit("The call starts at 9:04 AM.", Category::kTemporal,
                                         Subcategory::kTime, {"9:4 AM", "9:64 AM", "9:05 AM"});
  EXPECT_EQ(BuiltinValidate(clock, 0, nullptr), 0.0);
  EXPECT_EQ(BuiltinValidate(clock, 1, nullptr), 0.0);
  EXPECT_EQ(BuiltinValidate(clock, 2, nullptr), 1.0);
}

TEST(BuiltinValidateTest, UnchangedShapeScoresOne) {
  const EvaluationUnit u = BuildUnit("Revenue increased by 3.56% in Q3.", Category::kPercentage,
                                     Subcategory::kRelative, {"3.56%", "4.10%"});
  EXPECT_EQ(BuiltinValidate(u, 0, nullptr), 1.0);
  EXPECT_EQ(BuiltinValidate(u, 1, nullptr), 1.0);
}

TEST(BuiltinValidateTest, StructuralBreakage) {
  EvaluationUnit u = BuildUnit("Revenue increased by 3.56% in Q3.", Category::kPercentage,
                               Subcategory::kRelative, {"4.10%", "4.10%"});
  u.variants[0].text = "Revenue increased by 4.10% in Q4.";  // suffix edited
  u.variants[1].text = "Revenue increased by four% in Q3.";
  u.variants[1].surface = "four%";
  EXPECT_EQ(BuiltinValidate(u, 0, nullptr), 0.0);
  EXPECT_EQ(BuiltinValidate(u, 1, nullptr), 0.0);
}

TEST(BuiltinValidateTest, AbsolutePercentagePlausibility) {
  const EvaluationUnit abs = BuildUnit("Market share reached 45% last year.", Category::kPercentage,
                                       Subcategory::kAbsolute, {"120%", "80%"});
  EXPECT_EQ(BuiltinValidate(abs, 0, nullptr), 0.4);
  EXPECT_EQ(BuiltinValidate(abs, 1, nullptr), 1.0);
  const EvaluationUnit rel = BuildUnit("Sales grew 45% last year.", Category::kPercentage,
                                       Subcategory::kRelative, {"120%"});
  EXPECT_EQ(BuiltinValidate(rel, 0, nullptr), 1.0);
}

TEST(FilterRuleTest, Boundary) {
  const FilterOptions opts;
  std::vector<double> three_zero(9, 1.0);
  for (int i = 0; i < 3; ++i) three_zero[i] = 0.0;
  EXPECT_TRUE(KeepUnit(three_zero, opts));
  std::vector<double> four_low(9, 1.0);
  for (int i = 0; i < 4; ++i) four_low[i] = 0.4;
  EXPECT_FALSE(KeepUnit(four_low, opts));
  EXPECT_TRUE(KeepUnit({0.0}, opts));  // one-variant unit under the literal rule
  std::vector<double> at_threshold(9, 0.5);
  EXPECT_TRUE(KeepUnit(at_threshold, opts));
}

TEST(FilterRuleTest, ProportionalVariant) {
  FilterOptions opts;
  opts.proportional = true;
  EXPECT_FALSE(KeepUnit({0.0}, opts));
  EXPECT_FALSE(KeepUnit({0.0, 1.0}, opts));
  EXPECT_TRUE(KeepUnit({0.0, 1.0, 1.0}, opts));
  std::vector<double> nine(9, 1.0);
  nine[0] = nine[1] = nine[2] = 0.0;
  EXPECT_TRUE(KeepUnit(nine, opts));
  nine[3] = 0.0;
  EXPECT_FALSE(KeepUnit(nine, opts));
}

// Raising any score never turns a kept unit into a discarded one.
TEST(FilterRuleTest, Monotone) {
  Rng rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> scores(static_cast<size_t>(rng.UniformInt(1, 9)));
    for (double& s : scores) s = rng.UniformInt(0, 10) / 10.0;
    for (bool proportional : {false, true}) {
      FilterOptions opts;
      opts.proportional = proportional;
      if (!KeepUnit(scores, opts)) continue;
      std::vector<double> raised = scores;
      const size_t i = static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(raised.size()) - 1));
      raised[i] = std::min(1.0, raised[i] + rng.Uniform(0, 1));
      EXPECT_TRUE(KeepUnit(raised, opts));
    }
  }
}

TEST(FilterUnitsTest, KeepsWholeUnitsAndAttachesScores) {
  std::vector<EvaluationUnit> units = {
      BuildUnit("Sales grew 45% last year.", Category::kPercentage, Subcategory::kRelative,
                {"40%", "50%", "60%", "70%", "30%"}, "keep"),
      BuildUnit("Sales grew 45% last year.", Category::kPercentage, Subcategory::kRelative,
                {"40%", "50%", "60%", "70%", "30%"}, "drop"),
  };
  std::vector<ValidityReport> reports = {
      {"keep", {0.0, 0.1, 0.2, 1.0, 1.0}, true, {}},
      {"drop", {0.0, 0.1, 0.2, 0.3, 1.0}, true, {}},
  };
  ApplyFilter(reports, FilterOptions{});
  EXPECT_TRUE(reports[0].kept);
  EXPECT_FALSE(reports[1].kept);
  absl::StatusOr<std::vector<EvaluationUnit>> kept = FilterUnits(units, reports, FilterOptions{});
  ASSERT_TRUE(kept.ok());
  ASSERT_EQ(kept->size(), 1u);
  EXPECT_EQ((*kept)[0].unit_id, "keep");
  ASSERT_EQ((*kept)[0].variants.size(), 5u);  // low scorers stay inside kept units
  EXPECT_EQ((*kept)[0].variants[0].validity, 0.0);
}

TEST(FilterUnitsTest, MissingOrMismatchedReport) {
  std::vector<EvaluationUnit> units = {BuildUnit("Sales grew 45%.", Category::kPercentage,
                                                 Subcategory::kRelative, {"40%", "50%"}, "u")};
  EXPECT_EQ(FilterUnits(units, {}, FilterOptions{}).status().code(), absl::StatusCode::kNotFound);
  EXPECT_EQ(FilterUnits(units, {{"u", {1.0}, true, {}}}, FilterOptions{}).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(BuiltinValidatorTest, DeterministicAndRetentionOnFixture) {
  const Corpus corpus = *ParseCorpusJsonl(testing::Slurp(NUMPROBE_FIXTURE_DIR "/sentences.jsonl"));
  MakeUnitsOptions opts;
  opts.seed = 7;
  const std::vector<EvaluationUnit> units = MakeUnits(corpus, opts);
  BuiltinValidator v;
  std::vector<ValidityReport> a = v.Score(units);
  const std::vector<ValidityReport> b = v.Score(units);
  EXPECT_EQ(SerializeReports(a), SerializeReports(b));
  ApplyFilter(a, FilterOptions{});
  int kept = 0;
  for (const ValidityReport& r : a) kept += r.kept ? 1 : 0;
  const double retention = static_cast<double>(kept) / static_cast<double>(a.size());
  EXPECT_GE(retention, 0.5);
  EXPECT_LE(retention, 1.0);
}

TEST(ReportsTest, RoundTrip) {
  std::vector<ValidityReport> reports = {{"a#0#random", {1.0, 0.4, 0.0}, false, {"x", "y"}},
                                         {"b#1#rule:DateShift", {1.0}, true, {}}};
  const std::string text = SerializeReports(reports);
  absl::StatusOr<std::vector<ValidityReport>> back = ParseReports(text);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(SerializeReports(*back), text);
  EXPECT_FALSE(ParseReports("{\"unit_id\":1}\n").ok());
}

class ProcessValidatorTest : public ::testing::Test {
 protected:
  std::vector<EvaluationUnit> Units() {
    return {BuildUnit("Payment is due February 28th.", Category::kTemporal, Subcategory::kDate,
                      {"February 31st", "February 27th", "February 26th"}, "d")};
  }
  std::vector<ValidityReport> Run(const std::string& python_body) {
    const std::string script = dir_.file("validator.py");
    testing::Spit(script, "import json, sys\nfor line in sys.stdin:\n    r = json.loads(line)\n" +
                              python_body);
    AdapterOptions opts;
    opts.command = "python3 " + script;
    opts.timeout = std::chrono::milliseconds(3000);
    opts.retries = 0;
    ProcessValidator v(opts);
    return v.Score(Units());
  }
  testing::ScratchDir dir_{"validator"};
};

TEST_F(ProcessValidatorTest, ValidFlagsAndScores) {
  const std::vector<ValidityReport> r = Run(
      "    i = r['variant_index']\n"
      "    if i == 0:\n"
      "        out = {'valid': False, 'reason': 'no such day'}\n"
      "    elif i == 1:\n"
      "        out = {'valid': True}\n"
      "    else:\n"
      "        out = {'score': 0.25}\n"
      "    out.update(unit_id=r['unit_id'], variant_index=i)\n"
      "    print(json.dumps(out), flush=True)\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].scores, (std::vector<double>{0.0, 1.0, 0.25}));
}

TEST_F(ProcessValidatorTest, NonJsonFallsBackToBuiltin) {
  const std::vector<ValidityReport> r = Run("    print('garbage', flush=True)\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].scores, (std::vector<double>{0.0, 1.0, 1.0}));
  EXPECT_FALSE(r[0].reasons.empty());
}

}  // namespace
}  // namespace numprobe
