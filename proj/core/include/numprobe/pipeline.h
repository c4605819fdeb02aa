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


// File-based pipeline stages: extract -> augment -> validate -> evaluate ->
// report. Each stage reads its predecessor's artifact from the output
// directory (or an explicit input path), writes its own artifact, and
// writes a <stage>_summary.json next to it.

#ifndef NUMPROBE_PIPELINE_H_
#define NUMPROBE_PIPELINE_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "numprobe/adapter.h"
#include "numprobe/augment.h"
#include "numprobe/distance.h"
#include "numprobe/validate.h"

namespace numprobe {

inline constexpr char kCorpusArtifact[] = "corpus.jsonl";
inline constexpr char kUnitsArtifact[] = "units.jsonl";
inline constexpr char kValidityArtifact[] = "validity.jsonl";
inline constexpr char kKeptUnitsArtifact[] = "kept_units.jsonl";
inline constexpr char kCrossPairsArtifact[] = "cross_pairs.jsonl";
inline constexpr char kMetricsArtifact[] = "metrics.json";
inline constexpr char kReportJsonArtifact[] = "report.json";
inline constexpr char kReportTextArtifact[] = "report.txt";

struct RunConfig {
  std::string corpus_path;  // raw input for the extract stage (.csv or JSONL)
  std::string input;        // overrides a stage's default input artifact
  std::string out_dir = ".";
  uint64_t seed = 0;
  std::set<Family> families = {Family::kRandom, Family::kRuleBased};
  std::set<Rule> rules = {kAllRules.begin(), kAllRules.end()};
  std::optional<AdapterOptions> annotator;
  std::optional<AdapterOptions> validator;  // unset: builtin validator
  FilterOptions filter;
  std::vector<std::string> scorers = {"oracle"};  // builtin scorer names
  std::optional<AdapterOptions> scorer_adapter;   // evaluated after the builtins
  std::string scorer_adapter_name = "external";
  size_t cross_pairs = 10000;  // per augmentation family
  DistanceMode distance_mode = DistanceMode::kSurface;
  int workers = 1;
};

// Each returns the stage summary (also written to <stage>_summary.json).
absl::StatusOr<std::string> RunExtract(const RunConfig& config);
absl::StatusOr<std::string> RunAugment(const RunConfig& config);
absl::StatusOr<std::string> RunValidate(const RunConfig& config);
absl::StatusOr<std::string> RunEvaluate(const RunConfig& config);
absl::StatusOr<std::string> RunReport(const RunConfig& config);
// All five stages in order; returns the text report.
absl::StatusOr<std::string> RunAll(const RunConfig& config);

// 0 ok, 2 missing input, 3 schema error, 4 adapter failure, 1 otherwise.
int ExitCodeFor(const absl::Status& status);

}  // namespace numprobe

#endif  // NUMPROBE_PIPELINE_H_
