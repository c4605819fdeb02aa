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


#include "numprobe/protocol.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "fmt/format.h"
#include "numprobe/kendall.h"
#include "numprobe/random.h"

namespace numprobe {
namespace {

Category CategoryOf(const EvaluationUnit& unit) {
  return unit.target.label ? unit.target.label->category : kFallbackLabel.category;
}

}  // namespace

Decimal VariantDistance(const EvaluationUnit& unit, size_t i, DistanceMode mode) {
  NumeralMention variant;
  variant.value = unit.variants[i].value;
  variant.style = unit.variants[i].style;
  return NumericalDistance(unit.target, variant, mode);
}

void AssignDistances(std::vector<EvaluationUnit>& units, DistanceMode mode) {
  for (EvaluationUnit& unit : units) {
    for (size_t i = 0; i < unit.variants.size(); ++i) {
      unit.variants[i].distance = VariantDistance(unit, i, mode);
    }
  }
}

std::optional<TripletSelection> SelectTriplet(std::span<const Decimal> distances) {
  if (distances.size() < 2) return std::nullopt;
  TripletSelection s;
  for (size_t i = 1; i < distances.size(); ++i) {
    if (distances[i] < distances[s.closest]) s.closest = i;
    if (distances[i] > distances[s.farthest]) s.farthest = i;
  }
  if (distances[s.closest] == distances[s.farthest]) return std::nullopt;
  const auto count = [&](const Decimal& d) {
    return std::count(distances.begin(), distances.end(), d);
  };
  s.tie_broken = count(distances[s.closest]) > 1 || count(distances[s.farthest]) > 1;
  return s;
}

absl::StatusOr<std::vector<CrossPair>> SampleCrossPairs(const std::vector<EvaluationUnit>& units,
                                                       const CrossPairOptions& options) {
  std::vector<CrossPair> pairs;
  bool any_eligible = false;
  for (Family family : {Family::kRandom, Family::kRuleBased}) {
    std::map<Category, std::vector<size_t>> groups;
    for (size_t i = 0; i < units.size(); ++i) {
      if (units[i].spec.family == family && !units[i].variants.empty()) {
        groups[CategoryOf(units[i])].push_back(i);
      }
    }
    std::vector<size_t> pool;
    for (const auto& [category, members] : groups) {
      std::set<std::string_view> bases;
      for (size_t i : members) bases.insert(units[i].base_id);
      if (bases.size() >= 2) pool.insert(pool.end(), members.begin(), members.end());
    }
    if (pool.empty()) continue;
    any_eligible = true;
    Rng rng = Rng::ForStream(options.seed, fmt::format("cross_pairs/{}", FamilyName(family)));
    auto pick = [&rng](size_t n) {
      return static_cast<size_t>(rng.UniformInt(0, static_cast<int64_t>(n) - 1));
    };
    for (size_t p = 0; p < options.pairs_per_family; ++p) {
      for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        const size_t left = pool[pick(pool.size())];
        const std::vector<size_t>& group = groups[CategoryOf(units[left])];
        const size_t right = group[pick(group.size())];
        if (units[left].base_id == units[right].base_id) continue;
        const size_t lv = pick(units[left].variants.size());
        const size_t rv = pick(units[right].variants.size());
        const Decimal& dl = *units[left].variants[lv].distance;
        const Decimal& dr = *units[right].variants[rv].distance;
        if (dl == dr) continue;
        pairs.push_back({{left, lv}, {right, rv}, dl < dr ? Gold::kLeftCloser : Gold::kRightCloser});
        break;
      }
    }
  }
  if (!any_eligible) {
    return absl::FailedPreconditionError(
        "cross-pair sampling needs two units of one category from different base sentences");
  }
  return pairs;
}

ScoreTable ScoreTable::Build(const std::vector<EvaluationUnit>& units, Scorer& scorer) {
  std::vector<ScorePair> requests;
  std::map<std::pair<std::string_view, std::string_view>, size_t> index;
  std::vector<std::vector<size_t>> slots(units.size());
  for (size_t u = 0; u < units.size(); ++u) {
    for (const Variant& v : units[u].variants) {
      auto [it, inserted] =
          index.try_emplace({units[u].base_text, v.text}, requests.size());
      if (inserted) {
        requests.push_back({fmt::format("p{}", requests.size()), units[u].base_text, v.text});
      }
      slots[u].push_back(it->second);
    }
  }
  const std::vector<std::optional<double>> scores = scorer.Score(requests);
  ScoreTable table;
  table.scores_.resize(units.size());
  for (size_t u = 0; u < units.size(); ++u) {
    for (size_t slot : slots[u]) {
      std::optional<double> s = slot < scores.size() ? scores[slot] : std::nullopt;
      if (s && !std::isfinite(*s)) s.reset();
      table.scores_[u].push_back(s);
    }
  }
  return table;
}

void TripletCheck(const EvaluationUnit& unit, const ScoreTable& scores, size_t unit_index,
                  AccuracyTally& tally) {
  std::vector<Decimal> distances;
  for (const Variant& v : unit.variants) distances.push_back(*v.distance);
  const std::optional<TripletSelection> sel = SelectTriplet(distances);
  if (!sel) {
    ++tally.ineligible;
    return;
  }
  const std::optional<double> near = scores.at(unit_index, sel->closest);
  const std::optional<double> far = scores.at(unit_index, sel->farthest);
  if (!near || !far) {
    ++tally.scorer_errors;
    return;
  }
  ++tally.eligible;
  if (sel->tie_broken) ++tally.tie_broken;
  if (*near > *far) ++tally.passed;
}

void ListwiseCheck(const EvaluationUnit& unit, const ScoreTable& scores, size_t unit_index,
                   ListwiseTally& tally) {
  if (unit.variants.size() < 2) {
    ++tally.ineligible;
    return;
  }
  std::vector<double> predicted;
  std::vector<double> distances;
  for (size_t i = 0; i < unit.variants.size(); ++i) {
    const std::optional<double> s = scores.at(unit_index, i);
    if (!s) {
      ++tally.scorer_errors;
      return;
    }
    predicted.push_back(*s);
    distances.push_back(unit.variants[i].distance->ToDouble());
  }
  const absl::StatusOr<std::optional<double>> tau = KendallTauB(predicted, distances);
  if (!tau.ok() || !tau->has_value()) {
    ++tally.undefined;
    return;
  }
  ++tally.scored;
  tally.tau_sum += **tau;
}

void CrossPairCheck(const CrossPair& pair, const ScoreTable& scores, AccuracyTally& tally) {
  const std::optional<double> left = scores.at(pair.left.unit, pair.left.variant);
  const std::optional<double> right = scores.at(pair.right.unit, pair.right.variant);
  if (!left || !right) {
    ++tally.scorer_errors;
    return;
  }
  ++tally.eligible;
  const bool passed = pair.gold == Gold::kLeftCloser ? *left > *right : *right > *left;
  if (passed) ++tally.passed;
}

EvaluationResult Evaluate(const std::vector<EvaluationUnit>& units,
                          const std::vector<CrossPair>& pairs, Scorer& scorer, DistanceMode mode) {
  EvaluationResult result;
  result.scorer = scorer.name();
  result.mode = mode;
  result.units = static_cast<int>(units.size());
  for (Family family : {Family::kRandom, Family::kRuleBased}) result.by_family[family];
  const ScoreTable scores = ScoreTable::Build(units, scorer);
  for (size_t u = 0; u < units.size(); ++u) {
    const Family family = units[u].spec.family;
    StratumResult& total = result.by_family[family];
    StratumResult& stratum = result.by_stratum[{family, CategoryOf(units[u])}];
    for (StratumResult* r : {&total, &stratum}) {
      TripletCheck(units[u], scores, u, r->triplet);
      ListwiseCheck(units[u], scores, u, r->listwise);
    }
  }
  for (const CrossPair& pair : pairs) {
    const EvaluationUnit& left = units[pair.left.unit];
    const Family family = left.spec.family;
    CrossPairCheck(pair, scores, result.by_family[family].cross_pair);
    CrossPairCheck(pair, scores, result.by_stratum[{family, CategoryOf(left)}].cross_pair);
  }
  return result;
}

}  // namespace numprobe
