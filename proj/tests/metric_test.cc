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


#include "numprobe/metric.h"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "numprobe/random.h"
#include "test_util.h"

namespace numprobe {
namespace {

SimilarityMatrix Matrix(size_t rows, size_t cols, std::vector<double> v) {
  return {rows, cols, std::move(v)};
}

TEST(GreedyMatchTest, Examples) {
  EXPECT_EQ(*GreedyMatchScore(Matrix(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}), {1, 1, 1}), 1.0);
  const SimilarityMatrix m = Matrix(2, 2, {0.2, 0.8, 0.4, 0.1});
  EXPECT_DOUBLE_EQ(*GreedyMatchScore(m, {1, 1}), 0.6);
  EXPECT_DOUBLE_EQ(*GreedyMatchScore(m, {1, 0}), 0.8);
}

TEST(GreedyMatchTest, Errors) {
  EXPECT_FALSE(GreedyMatchScore(Matrix(0, 0, {}), {}).ok());
  const SimilarityMatrix m = Matrix(2, 2, {0.2, 0.8, 0.4, 0.1});
  EXPECT_FALSE(GreedyMatchScore(m, {0, 0}).ok());
  EXPECT_FALSE(GreedyMatchScore(m, {1}).ok());
  EXPECT_FALSE(GreedyMatchScore(m, {1, -1}).ok());
  EXPECT_FALSE(GreedyMatchScore(Matrix(1, 2, {0.5, 1.5}), {1}).ok());
  EXPECT_FALSE(GreedyMatchScore(Matrix(2, 2, {0.5}), {1, 1}).ok());
}

TEST(GreedyMatchTest, MonotoneAndBounded) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t rows = static_cast<size_t>(rng.UniformInt(1, 6));
    const size_t cols = static_cast<size_t>(rng.UniformInt(1, 6));
    SimilarityMatrix m{rows, cols, std::vector<double>(rows * cols)};
    for (double& x : m.values) x = rng.Uniform(-1, 1);
    const std::vector<double> uniform(rows, 1.0);
    const double base = *GreedyMatchScore(m, uniform);
    double lo = 1, hi = -1;
    for (size_t i = 0; i < rows; ++i) {
      double best = -1;
      for (size_t j = 0; j < cols; ++j) best = std::max(best, m.at(i, j));
      lo = std::min(lo, best);
      hi = std::max(hi, best);
    }
    EXPECT_GE(base, lo - 1e-12);
    EXPECT_LE(base, hi + 1e-12);
    SimilarityMatrix raised = m;
    double& cell = raised.values[static_cast<size_t>(
        rng.UniformInt(0, static_cast<int64_t>(raised.values.size()) - 1))];
    cell = std::min(1.0, cell + rng.Uniform(0, 1));
    EXPECT_GE(*GreedyMatchScore(raised, uniform), base - 1e-12);
  }
}

TEST(LexicalTest, Examples) {
  EXPECT_EQ(LexicalOverlapScore(Tokenize("a b c"), Tokenize("a b c")), 1.0);
  EXPECT_EQ(LexicalOverlapScore(Tokenize("a b c"), Tokenize("d e f")), 0.0);
  EXPECT_DOUBLE_EQ(LexicalOverlapScore(Tokenize("a b c"), Tokenize("a b d")), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(LexicalOverlapScore(Tokenize("a a b"), Tokenize("a b b")), 2.0 / 3.0);
}

TEST(LexicalTest, TokenizeSplitsPunctuation) {
  EXPECT_EQ(Tokenize("Revenue increased by 3.56%."),
            (std::vector<std::string>{"revenue", "increased", "by", "3", ".", "56", "%", "."}));
}

// Word-level overlap penalizes "3.56%" vs "4%" more than "4%" vs "40%",
// the same inversion subword fragmentation causes in embedding metrics.
TEST(LexicalTest, FragmentationInversion) {
  const auto s1 = Tokenize("Revenue increased by 3.56%.");
  const auto s2 = Tokenize("Revenue increased by 4%.");
  const auto s3 = Tokenize("Revenue increased by 40%.");
  EXPECT_GE(LexicalOverlapScore(s2, s3), LexicalOverlapScore(s1, s2));
}

TEST(NumericAwareTest, Examples) {
  EXPECT_DOUBLE_EQ(NumericAwareScore("Revenue rose 4%.", "Revenue rose 4%."), 1.0);
  EXPECT_LT(NumericAwareScore("Sales were up 2%.", "Sales were up 20%."),
            NumericAwareScore("Sales were up 2%.", "Sales were up 2.1%."));
  EXPECT_DOUBLE_EQ(NumericAwareScore("no digits here", "no digits there"),
                   LexicalOverlapScore(Tokenize("no digits here"), Tokenize("no digits there")));
  // The motivating pair ordering comes out right for this scorer.
  EXPECT_GT(NumericAwareScore("Revenue increased by 3.56%.", "Revenue increased by 4%."),
            NumericAwareScore("Revenue increased by 4%.", "Revenue increased by 40%."));
}

TEST(ScorerTest, OracleAndAntiOracle) {
  OracleScorer oracle(DistanceMode::kSurface);
  OracleScorer anti(DistanceMode::kSurface, /*reversed=*/true);
  const std::vector<ScorePair> pairs = {{"a", "up 4%", "up 40%"},
                                        {"b", "up 3.56%", "up 4%"},
                                        {"c", "up 4%", "up 4% and 5%"}};
  const auto o = oracle.Score(pairs);
  const auto r = anti.Score(pairs);
  EXPECT_EQ(o[0], -36.0);
  EXPECT_DOUBLE_EQ(*o[1], -0.44);
  EXPECT_FALSE(o[2].has_value());
  EXPECT_EQ(r[0], 36.0);
}

TEST(ScorerTest, RandomIsSeededAndOrderFree) {
  RandomScorer a(1), b(1), c(2);
  const std::vector<ScorePair> pairs = {{"x", "one", "two"}, {"y", "three", "four"}};
  const std::vector<ScorePair> swapped = {pairs[1], pairs[0]};
  const auto sa = a.Score(pairs);
  EXPECT_EQ(sa, b.Score(pairs));
  EXPECT_NE(sa, c.Score(pairs));
  const auto ss = a.Score(swapped);
  EXPECT_EQ(sa[0], ss[1]);
  for (const auto& s : sa) {
    EXPECT_GE(*s, 0.0);
    EXPECT_LT(*s, 1.0);
  }
}

TEST(ScorerTest, BuiltinRegistry) {
  for (std::string_view name : BuiltinScorerNames()) {
    absl::StatusOr<std::unique_ptr<Scorer>> s = MakeBuiltinScorer(name, DistanceMode::kSurface, 1);
    ASSERT_TRUE(s.ok()) << name;
    EXPECT_EQ((*s)->name(), name);
  }
  EXPECT_EQ(MakeBuiltinScorer("bertscore", DistanceMode::kSurface, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
}

class ProcessScorerTest : public ::testing::Test {
 protected:
  std::string Script(const std::string& body) {
    const std::string path = dir_.file("scorer.py");
    testing::Spit(path, "import json, sys\nfor line in sys.stdin:\n    r = json.loads(line)\n" + body);
    return "python3 " + path;
  }
  std::vector<ScorePair> Pairs(int n) {
    std::vector<ScorePair> out;
    for (int i = 0; i < n; ++i) {
      out.push_back({"p" + std::to_string(i), "Revenue rose " + std::to_string(i) + "%.",
                     "Revenue rose 4%."});
    }
    return out;
  }
  testing::ScratchDir dir_{"scorer"};
};

TEST_F(ProcessScorerTest, EchoAdapterReturnsConstant) {
  AdapterOptions opts;
  opts.command = Script("    print(json.dumps({'id': r['id'], 'score': 0.5}), flush=True)\n");
  ProcessScorer s("echo", opts);
  for (const auto& v : s.Score(Pairs(20))) EXPECT_EQ(v, 0.5);
  EXPECT_EQ(s.failed_batches(), 0);
  EXPECT_EQ(s.name(), "echo");
}

TEST_F(ProcessScorerTest, OmittedIdAndErrorMarkersFail) {
  AdapterOptions opts;
  opts.command = Script(
      "    if r['id'] == 'p1':\n"
      "        print(json.dumps({'id': 'p1', 'error': 'empty candidate'}), flush=True)\n"
      "    elif r['id'] != 'p2':\n"
      "        print(json.dumps({'id': r['id'], 'score': 0.9}), flush=True)\n");
  opts.timeout = std::chrono::milliseconds(1500);
  opts.retries = 0;
  ProcessScorer s("partial", opts);
  const auto v = s.Score(Pairs(4));
  EXPECT_EQ(v[0], 0.9);
  EXPECT_FALSE(v[1].has_value());
  EXPECT_FALSE(v[2].has_value());
  EXPECT_EQ(v[3], 0.9);
}

TEST_F(ProcessScorerTest, RepliesMayArriveOutOfOrder) {
  AdapterOptions opts;
  opts.command = Script(
      "    buf = [r] + [json.loads(sys.stdin.readline()) for _ in range(2)]\n"
      "    for q in reversed(buf):\n"
      "        print(json.dumps({'id': q['id'], 'score': float(q['id'][1:])}), flush=True)\n");
  opts.batch_size = 3;
  ProcessScorer s("reverse", opts);
  const auto v = s.Score(Pairs(6));
  for (int i = 0; i < 6; ++i) EXPECT_EQ(v[static_cast<size_t>(i)], static_cast<double>(i));
}

TEST_F(ProcessScorerTest, ChunkingDoesNotChangeResults) {
  const std::string cmd = Script(
      "    h = sum(map(ord, r['candidate'] + r['reference'])) % 997\n"
      "    print(json.dumps({'id': r['id'], 'score': h / 997.0}), flush=True)\n");
  const std::vector<ScorePair> pairs = Pairs(10000);
  std::vector<std::vector<std::optional<double>>> results;
  for (size_t batch : {size_t{10000}, size_t{256}, size_t{7}}) {
    for (Transport t : {Transport::kStreams, Transport::kFiles}) {
      if (t == Transport::kFiles && batch == 7) continue;  // too many process launches
      AdapterOptions opts;
      opts.command = cmd;
      opts.batch_size = batch;
      opts.transport = t;
      ProcessScorer s("hash", opts);
      results.push_back(s.Score(pairs));
      EXPECT_EQ(s.failed_batches(), 0);
    }
  }
  for (const auto& r : results) EXPECT_EQ(r, results.front());
  for (const auto& v : results.front()) EXPECT_TRUE(v.has_value());
}

TEST_F(ProcessScorerTest, DeadAdapterMarksEveryPairFailed) {
  AdapterOptions opts;
  opts.command = "exit 3";
  opts.timeout = std::chrono::milliseconds(1000);
  ProcessScorer s("dead", opts);
  const auto v = s.Score(Pairs(5));
  for (const auto& x : v) EXPECT_FALSE(x.has_value());
  EXPECT_EQ(s.failed_batches(), 1);
}

TEST_F(ProcessScorerTest, HungAdapterTimesOutAndRetries) {
  AdapterOptions opts;
  opts.command = "sleep 5";
  opts.timeout = std::chrono::milliseconds(200);
  opts.retries = 1;
  ProcessScorer s("hung", opts);
  const auto start = std::chrono::steady_clock::now();
  const auto v = s.Score(Pairs(2));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_FALSE(v[0].has_value());
  EXPECT_EQ(s.failed_batches(), 1);
  EXPECT_LT(elapsed, std::chrono::seconds(4));
}

}  // namespace
}  // namespace numprobe
