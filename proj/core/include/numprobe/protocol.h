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


// Triplet, listwise and cross-pair evaluation of a scorer against numeric
// distance. Every protocol compares score(base, variant), with the base
// sentence as candidate and the variant as reference.

#ifndef NUMPROBE_PROTOCOL_H_
#define NUMPROBE_PROTOCOL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "numprobe/augment.h"
#include "numprobe/distance.h"
#include "numprobe/metric.h"

namespace numprobe {

// Distance of variant i from the unit's target.
Decimal VariantDistance(const EvaluationUnit& unit, size_t i, DistanceMode mode);
// Sets Variant::distance on every variant.
void AssignDistances(std::vector<EvaluationUnit>& units, DistanceMode mode);

struct TripletSelection {
  size_t closest = 0;
  size_t farthest = 0;
  bool tie_broken = false;  // several variants shared the min or max distance
};

// Argmin/argmax of the distances, lowest index first on ties. nullopt with
// fewer than two variants or when all distances are equal.
std::optional<TripletSelection> SelectTriplet(std::span<const Decimal> distances);

struct AccuracyTally {
  int eligible = 0;
  int passed = 0;
  int ineligible = 0;     // not enough distinct distances
  int scorer_errors = 0;  // excluded because a score was missing
  int tie_broken = 0;

  std::optional<double> accuracy() const {
    if (eligible == 0) return std::nullopt;
    return static_cast<double>(passed) / eligible;
  }
};

struct ListwiseTally {
  int scored = 0;         // units with a defined tau_b
  double tau_sum = 0.0;
  int undefined = 0;      // all scores or all distances tied
  int ineligible = 0;     // fewer than two variants
  int scorer_errors = 0;

  std::optional<double> mean() const {
    if (scored == 0) return std::nullopt;
    return tau_sum / scored;
  }
};

struct StratumResult {
  AccuracyTally triplet;
  ListwiseTally listwise;
  AccuracyTally cross_pair;
};

struct VariantRef {
  size_t unit = 0;  // index into the unit list
  size_t variant = 0;
};

enum class Gold { kLeftCloser, kRightCloser };

struct CrossPair {
  VariantRef left;
  VariantRef right;
  Gold gold = Gold::kLeftCloser;
};

struct CrossPairOptions {
  size_t pairs_per_family = 10000;
  uint64_t seed = 0;
  int max_attempts = 100;  // draws per pair before giving up on it
};

// For each augmentation family, `pairs_per_family` pairs of variants from
// two units of the same category built on different base sentences, with
// unequal distances. Requires distances to be assigned. Categories with
// units from a single base sentence contribute nothing; FailedPrecondition
// when no family has any eligible category.
absl::StatusOr<std::vector<CrossPair>> SampleCrossPairs(const std::vector<EvaluationUnit>& units,
                                                       const CrossPairOptions& options);

// Scores keyed by (unit, variant); nullopt marks a pair the scorer failed on.
class ScoreTable {
 public:
  // Scores every (base, variant) pair of `units` in one batch.
  static ScoreTable Build(const std::vector<EvaluationUnit>& units, Scorer& scorer);

  std::optional<double> at(size_t unit, size_t variant) const {
    return scores_[unit][variant];
  }

 private:
  std::vector<std::vector<std::optional<double>>> scores_;
};

// Single-unit protocol outcomes. Both update `tally`.
void TripletCheck(const EvaluationUnit& unit, const ScoreTable& scores, size_t unit_index,
                  AccuracyTally& tally);
void ListwiseCheck(const EvaluationUnit& unit, const ScoreTable& scores, size_t unit_index,
                   ListwiseTally& tally);
void CrossPairCheck(const CrossPair& pair, const ScoreTable& scores, AccuracyTally& tally);

struct EvaluationResult {
  std::string scorer;
  DistanceMode mode = DistanceMode::kSurface;
  int units = 0;
  std::map<Family, StratumResult> by_family;
  std::map<std::pair<Family, Category>, StratumResult> by_stratum;
  int cross_pairs_requested = 0;  // per family
};

// Runs all three protocols. Distances must be assigned.
EvaluationResult Evaluate(const std::vector<EvaluationUnit>& units,
                          const std::vector<CrossPair>& pairs, Scorer& scorer, DistanceMode mode);

}  // namespace numprobe

#endif  // NUMPROBE_PROTOCOL_H_
