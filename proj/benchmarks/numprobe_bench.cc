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


#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "fmt/format.h"
#include "numprobe/augment.h"
#include "numprobe/corpus.h"
#include "numprobe/kendall.h"
#include "numprobe/metric.h"
#include "numprobe/numeral.h"
#include "numprobe/protocol.h"
#include "numprobe/random.h"

namespace numprobe {
namespace {

const std::vector<std::string>& Sentences() {
  static const std::vector<std::string> kSentences = {
      "Revenue increased by 3.56% to $110 million on Sep. 28, 2025.",
      "We sold 1,000 units within 1 week at $18.00 per share.",
      "Trading halted at 10:30 AM; the debt ratio was 0.25.",
      "The iPhone 15 drove sales of 12,500 units, up 22% from 2023.",
      "Calls at the 150 strike expire on June 21, 2024 at 4:30 PM.",
  };
  return kSentences;
}

std::string CorpusJsonl(int records) {
  std::string out;
  const char* labels[] = {
      R"([{"target":"3.56","category":"Percentage","subcategory":"relative"},{"target":"110","category":"Monetary","subcategory":"money"},{"target":"2025","category":"Temporal","subcategory":"date"}])",
      R"([{"target":"1,000","category":"Quantity","subcategory":"quantity"},{"target":"1","category":"Temporal","subcategory":"date"},{"target":"18.00","category":"Monetary","subcategory":"money"}])",
      R"([{"target":"10:30","category":"Temporal","subcategory":"time"},{"target":"0.25","category":"Indicator","subcategory":"indicator"}])",
      R"([{"target":"15","category":"ProductNumber","subcategory":"product_number"},{"target":"12,500","category":"Quantity","subcategory":"quantity"},{"target":"22","category":"Percentage","subcategory":"relative"},{"target":"2023","category":"Temporal","subcategory":"date"}])",
      R"([{"target":"150","category":"Option","subcategory":"exercise_price"},{"target":"2024","category":"Option","subcategory":"maturity_date"},{"target":"4:30","category":"Temporal","subcategory":"time"}])",
  };
  for (int i = 0; i < records; ++i) {
    const size_t k = static_cast<size_t>(i) % Sentences().size();
    out += fmt::format(R"({{"id":"b{}","text":"{}","labels":{}}})", i, Sentences()[k], labels[k]);
    out += '\n';
  }
  return out;
}

void BM_KendallTauB(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  Rng rng(1);
  std::vector<double> scores(n), distances(n);
  for (size_t i = 0; i < n; ++i) {
    scores[i] = rng.Uniform01();
    distances[i] = static_cast<double>(rng.UniformInt(0, 50));
  }
  for (auto _ : state) benchmark::DoNotOptimize(KendallTauB(scores, distances));
  state.SetComplexityN(static_cast<int64_t>(n));
}
BENCHMARK(BM_KendallTauB)->Arg(9)->Arg(100)->Arg(1000)->Arg(10000)->Complexity();

void BM_ExtractNumerals(benchmark::State& state) {
  int64_t bytes = 0;
  for (auto _ : state) {
    for (const std::string& s : Sentences()) {
      benchmark::DoNotOptimize(ExtractNumerals(s));
      bytes += static_cast<int64_t>(s.size());
    }
  }
  state.SetBytesProcessed(bytes);
}
BENCHMARK(BM_ExtractNumerals);

void BM_MakeUnits(benchmark::State& state) {
  const Corpus corpus = *ParseCorpusJsonl(CorpusJsonl(500));
  MakeUnitsOptions opts;
  opts.seed = 7;
  opts.workers = static_cast<int>(state.range(0));
  size_t units = 0;
  for (auto _ : state) units = MakeUnits(corpus, opts).size();
  state.counters["units"] = static_cast<double>(units);
}
BENCHMARK(BM_MakeUnits)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_EvaluateOracle(benchmark::State& state) {
  const Corpus corpus = *ParseCorpusJsonl(CorpusJsonl(500));
  MakeUnitsOptions opts;
  opts.seed = 7;
  std::vector<EvaluationUnit> units = MakeUnits(corpus, opts);
  AssignDistances(units, DistanceMode::kSurface);
  CrossPairOptions cp;
  cp.pairs_per_family = 10000;
  const std::vector<CrossPair> pairs = *SampleCrossPairs(units, cp);
  OracleScorer oracle(DistanceMode::kSurface);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Evaluate(units, pairs, oracle, DistanceMode::kSurface));
  }
}
BENCHMARK(BM_EvaluateOracle)->Unit(benchmark::kMillisecond);

void BM_GreedyMatchScore(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  Rng rng(2);
  SimilarityMatrix m{n, n, std::vector<double>(n * n)};
  for (double& x : m.values) x = rng.Uniform(-1, 1);
  const std::vector<double> weights(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(GreedyMatchScore(m, weights));
}
BENCHMARK(BM_GreedyMatchScore)->Arg(16)->Arg(64);

}  // namespace
}  // namespace numprobe

BENCHMARK_MAIN();
