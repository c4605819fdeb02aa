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


#include "numprobe/pipeline.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "numprobe/report.h"
#include "test_util.h"

namespace numprobe {
namespace {

namespace fs = std::filesystem;
using ::numprobe::testing::ScratchDir;
using ::numprobe::testing::Slurp;
using ::numprobe::testing::Spit;

const char kFixture[] = NUMPROBE_FIXTURE_DIR "/sentences.jsonl";

RunConfig FixtureConfig(const std::string& out, int workers) {
  RunConfig c;
  c.corpus_path = kFixture;
  c.out_dir = out;
  c.seed = 7;
  c.workers = workers;
  c.cross_pairs = 500;
  c.scorers = {"oracle", "random", "numeric-aware"};
  return c;
}

std::vector<std::string> ArtifactNames(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

TEST(PipelineTest, ArtifactsIdenticalAcrossRunsAndWorkers) {
  ScratchDir a("pipe-a"), b("pipe-b"), c("pipe-c");
  ASSERT_TRUE(RunAll(FixtureConfig(a.path().string(), 1)).ok());
  ASSERT_TRUE(RunAll(FixtureConfig(b.path().string(), 1)).ok());
  ASSERT_TRUE(RunAll(FixtureConfig(c.path().string(), 6)).ok());
  const std::vector<std::string> names = ArtifactNames(a.path());
  EXPECT_EQ(names, ArtifactNames(c.path()));
  for (const char* required :
       {kCorpusArtifact, kUnitsArtifact, kValidityArtifact, kKeptUnitsArtifact,
        kCrossPairsArtifact, kMetricsArtifact, kReportJsonArtifact, kReportTextArtifact}) {
    EXPECT_TRUE(std::find(names.begin(), names.end(), required) != names.end()) << required;
  }
  for (const std::string& n : names) {
    const std::string ref = Slurp(a.file(n));
    EXPECT_FALSE(ref.empty()) << n;
    EXPECT_EQ(ref, Slurp(b.file(n))) << n;
    EXPECT_EQ(ref, Slurp(c.file(n))) << n;
  }
}

TEST(PipelineTest, StageRerunReproducesOutput) {
  ScratchDir dir("pipe-rerun");
  RunConfig config = FixtureConfig(dir.path().string(), 2);
  ASSERT_TRUE(RunAll(config).ok());
  const std::string units = Slurp(dir.file(kUnitsArtifact));
  const std::string metrics = Slurp(dir.file(kMetricsArtifact));
  ASSERT_TRUE(RunAugment(config).ok());
  EXPECT_EQ(Slurp(dir.file(kUnitsArtifact)), units);
  ASSERT_TRUE(RunValidate(config).ok());
  ASSERT_TRUE(RunEvaluate(config).ok());
  EXPECT_EQ(Slurp(dir.file(kMetricsArtifact)), metrics);
}

TEST(PipelineTest, OracleReportShowsPerfectScores) {
  ScratchDir dir("pipe-oracle");
  RunConfig config = FixtureConfig(dir.path().string(), 1);
  config.scorers = {"oracle"};
  ASSERT_TRUE(RunAll(config).ok());
  absl::StatusOr<std::vector<EvaluationResult>> metrics =
      ParseMetrics(Slurp(dir.file(kMetricsArtifact)));
  ASSERT_TRUE(metrics.ok());
  ASSERT_EQ(metrics->size(), 1u);
  for (const auto& [family, s] : (*metrics)[0].by_family) {
    EXPECT_EQ(s.triplet.accuracy(), 1.0);
    EXPECT_EQ(s.listwise.mean(), 1.0);
    EXPECT_EQ(s.cross_pair.accuracy(), 1.0);
  }
  std::istringstream text(Slurp(dir.file(kReportTextArtifact)));
  std::string line;
  std::getline(text, line);
  std::getline(text, line);
  std::getline(text, line);
  std::istringstream row(line);
  std::vector<std::string> cells{std::istream_iterator<std::string>(row), {}};
  EXPECT_EQ(cells, (std::vector<std::string>{"oracle", "1.0000", "1.0000", "1.0000", "1.0000",
                                             "1.0000", "1.0000"}));
}

TEST(PipelineTest, MetricsRoundTrip) {
  ScratchDir dir("pipe-metrics");
  ASSERT_TRUE(RunAll(FixtureConfig(dir.path().string(), 1)).ok());
  const std::string text = Slurp(dir.file(kMetricsArtifact));
  absl::StatusOr<std::vector<EvaluationResult>> metrics = ParseMetrics(text);
  ASSERT_TRUE(metrics.ok());
  EXPECT_EQ(SerializeMetrics(*metrics), text);
  EXPECT_EQ(RenderReportText(*metrics), Slurp(dir.file(kReportTextArtifact)));
  EXPECT_EQ(RenderReportJson(*metrics), Slurp(dir.file(kReportJsonArtifact)));
}

TEST(PipelineTest, ExitCodes) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCodeFor(absl::NotFoundError("x")), 2);
  EXPECT_EQ(ExitCodeFor(absl::InvalidArgumentError("x")), 3);
  EXPECT_EQ(ExitCodeFor(absl::UnavailableError("x")), 4);
  EXPECT_EQ(ExitCodeFor(absl::DeadlineExceededError("x")), 4);
  EXPECT_EQ(ExitCodeFor(absl::InternalError("x")), 1);

  ScratchDir dir("pipe-errors");
  RunConfig config = FixtureConfig(dir.path().string(), 1);
  config.corpus_path = dir.file("missing.jsonl");
  EXPECT_EQ(RunExtract(config).status().code(), absl::StatusCode::kNotFound);
  EXPECT_EQ(RunEvaluate(config).status().code(), absl::StatusCode::kNotFound);

  Spit(dir.file("bad.jsonl"), "{\"id\":\"a\",\"text\":\"up 4%\"}\n{\"id\":\"b\",\"text\":7}\n");
  config.corpus_path = dir.file("bad.jsonl");
  const absl::Status bad = RunExtract(config).status();
  EXPECT_EQ(ExitCodeFor(bad), 3);
  EXPECT_NE(std::string(bad.message().data(), bad.message().size()).find("line 2"),
            std::string::npos);
}

TEST(PipelineTest, DeadScorerAdapterIsUnavailable) {
  ScratchDir dir("pipe-dead");
  RunConfig config = FixtureConfig(dir.path().string(), 1);
  config.scorers = {};
  AdapterOptions adapter;
  adapter.command = "exit 1";
  adapter.timeout = std::chrono::milliseconds(1000);
  config.scorer_adapter = adapter;
  EXPECT_EQ(ExitCodeFor(RunAll(config).status()), 4);
}

TEST(PipelineTest, ExternalScorerRunsThroughWireProtocol) {
  ScratchDir dir("pipe-ext");
  const std::string script = dir.file("scorer.py");
  Spit(script,
       "import json, sys\n"
       "for line in sys.stdin:\n"
       "    r = json.loads(line)\n"
       "    print(json.dumps({'id': r['id'], 'score': 0.5}), flush=True)\n");
  RunConfig config = FixtureConfig(dir.path().string(), 1);
  config.scorers = {};
  AdapterOptions adapter;
  adapter.command = "python3 " + script;
  config.scorer_adapter = adapter;
  config.scorer_adapter_name = "flat";
  ASSERT_TRUE(RunAll(config).ok());
  const std::string text = Slurp(dir.file(kReportTextArtifact));
  EXPECT_NE(text.find("flat"), std::string::npos);
}

#ifdef NUMPROBE_CLI
int RunCli(const std::string& args) {
  const std::string cmd = std::string(NUMPROBE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, GoldenReport) {
  ScratchDir dir("cli-golden");
  ASSERT_EQ(RunCli(fmt::format(
                "run --corpus {} --out {} --seed 7 --workers 3 --scorer oracle --scorer anti-oracle "
                "--scorer random --scorer lexical --scorer numeric-aware --scorer constant "
                "--cross-pairs 2000",
                kFixture, dir.path().string())),
            0);
  EXPECT_EQ(Slurp(dir.file(kReportTextArtifact)),
            Slurp(NUMPROBE_GOLDEN_DIR "/fixture_seed7_report.txt"));
}

TEST(CliTest, StagesByHand) {
  ScratchDir dir("cli-stages");
  const std::string out = " --out " + dir.path().string();
  ASSERT_EQ(RunCli(fmt::format("extract --corpus {}{}", kFixture, out)), 0);
  ASSERT_EQ(RunCli("augment --seed 3 --families rule_based --rules DateShift,LastDigitEdit" + out), 0);
  const std::string first = Slurp(dir.file(kUnitsArtifact));
  ASSERT_EQ(RunCli("augment --seed 3 --families rule_based --rules DateShift,LastDigitEdit" + out), 0);
  EXPECT_EQ(Slurp(dir.file(kUnitsArtifact)), first);
  EXPECT_EQ(first.find("\"random\""), std::string::npos);
  ASSERT_EQ(RunCli("validate --proportional" + out), 0);
  ASSERT_EQ(RunCli("evaluate --seed 3 --scorer oracle --cross-pairs 100" + out), 0);
  ASSERT_EQ(RunCli("report" + out), 0);
  EXPECT_TRUE(fs::exists(dir.file(kReportTextArtifact)));
}

TEST(CliTest, ExitCodeContract) {
  ScratchDir dir("cli-exit");
  const std::string out = " --out " + dir.path().string();
  EXPECT_EQ(RunCli("extract --corpus " + dir.file("nope.jsonl") + out), 2);
  EXPECT_EQ(RunCli("evaluate --scorer oracle" + out), 2);
  Spit(dir.file("units.jsonl"), "{\"unit_id\": 5}\n");
  EXPECT_EQ(RunCli("validate" + out), 3);
  EXPECT_EQ(RunCli("augment --families sideways" + out), 3);
  ASSERT_EQ(RunCli(fmt::format("extract --corpus {}{}", kFixture, out)), 0);
  ASSERT_EQ(RunCli("augment --seed 1" + out), 0);
  ASSERT_EQ(RunCli("validate" + out), 0);
  EXPECT_EQ(RunCli("evaluate --scorer-cmd 'exit 1' --adapter-timeout-ms 500" + out), 4);
  EXPECT_EQ(RunCli("evaluate --scorer no-such-scorer" + out), 3);
}

TEST(CliTest, PromptPrintsTemplates) {
  const std::string cmd = std::string(NUMPROBE_CLI) + " prompt validation --sentence 'Up 4%.'";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string text;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), p)) text.append(buf, n);
  EXPECT_EQ(pclose(p), 0);
  EXPECT_NE(text.find("Up 4%."), std::string::npos);
}
#endif  // NUMPROBE_CLI

}  // namespace
}  // namespace numprobe
