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


// Serialization and rendering of evaluation results.

#ifndef NUMPROBE_REPORT_H_
#define NUMPROBE_REPORT_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "numprobe/protocol.h"

namespace numprobe {

// Full tallies, one entry per scorer.
std::string SerializeMetrics(const std::vector<EvaluationResult>& results);
absl::StatusOr<std::vector<EvaluationResult>> ParseMetrics(std::string_view content);

// Headline numbers: per scorer, each protocol by augmentation family, plus
// per-category strata.
std::string RenderReportJson(const std::vector<EvaluationResult>& results);

// Aligned text table with one row per scorer and columns Triplet / Listwise /
// Cross-Pair, each split into Random and Rule-based, followed by the
// per-category breakdown. Values use 4 decimals; "n/a" marks empty cells.
std::string RenderReportText(const std::vector<EvaluationResult>& results);

}  // namespace numprobe

#endif  // NUMPROBE_REPORT_H_
