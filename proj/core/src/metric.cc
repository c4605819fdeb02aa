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

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "fmt/format.h"
#include "json.hpp"
#include "numprobe/random.h"
#include "text_util.h"

namespace numprobe {
namespace {

using Json = nlohmann::ordered_json;

bool IsWordByte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

}  // namespace

absl::StatusOr<double> GreedyMatchScore(const SimilarityMatrix& sim,
                                        const std::vector<double>& weights) {
  if (sim.rows == 0 || sim.cols == 0) return absl::InvalidArgumentError("empty similarity matrix");
  if (sim.values.size() != sim.rows * sim.cols) {
    return absl::InvalidArgumentError("matrix values do not match its shape");
  }
  if (weights.size() != sim.rows) {
    return absl::InvalidArgumentError(
        fmt::format("{} weights for {} candidate tokens", weights.size(), sim.rows));
  }
  double numerator = 0.0;
  double weight_sum = 0.0;
  for (size_t i = 0; i < sim.rows; ++i) {
    if (weights[i] < 0.0) return absl::InvalidArgumentError("negative weight");
    double best = -1.0;
    for (size_t j = 0; j < sim.cols; ++j) {
      const double v = sim.at(i, j);
      if (!(v >= -1.0 && v <= 1.0)) {
        return absl::InvalidArgumentError(fmt::format("similarity {} outside [-1, 1]", v));
      }
      best = std::max(best, v);
    }
    numerator += weights[i] * best;
    weight_sum += weights[i];
  }
  if (weight_sum <= 0.0) return absl::InvalidArgumentError("weights sum to zero");
  return numerator / weight_sum;
}

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (IsWordByte(c)) {
      size_t j = i;
      while (j < text.size() && IsWordByte(static_cast<unsigned char>(text[j]))) ++j;
      tokens.push_back(ToLower(text.substr(i, j - i)));
      i = j;
    } else {
      tokens.emplace_back(1, static_cast<char>(c));
      ++i;
    }
  }
  return tokens;
}

double LexicalOverlapScore(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::map<std::string_view, int> counts;
  for (const std::string& t : a) ++counts[t];
  int overlap = 0;
  for (const std::string& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return 2.0 * overlap / static_cast<double>(a.size() + b.size());
}

double NumericAwareScore(std::string_view a, std::string_view b) {
  const std::vector<NumeralMention> ma = ExtractNumerals(a);
  const std::vector<NumeralMention> mb = ExtractNumerals(b);
  auto strip = [](std::string_view text, const std::vector<NumeralMention>& mentions) {
    std::string out;
    size_t at = 0;
    for (const NumeralMention& m : mentions) {
      out.append(text.substr(at, m.span.start - at));
      out.push_back(' ');
      at = m.span.end;
    }
    out.append(text.substr(at));
    return out;
  };
  double score = LexicalOverlapScore(Tokenize(strip(a, ma)), Tokenize(strip(b, mb)));
  for (size_t i = 0; i < std::min(ma.size(), mb.size()); ++i) {
    const double va = UnitNormalizedValue(ma[i].value, ma[i].style).ToDouble();
    const double vb = UnitNormalizedValue(mb[i].value, mb[i].style).ToDouble();
    score *= std::exp(-std::abs(va - vb) / (std::abs(va) + 1e-9));
  }
  return score;
}

std::vector<std::optional<double>> OracleScorer::Score(const std::vector<ScorePair>& pairs) {
  std::vector<std::optional<double>> out;
  out.reserve(pairs.size());
  for (const ScorePair& p : pairs) {
    const std::vector<NumeralMention> a = ExtractNumerals(p.candidate);
    const std::vector<NumeralMention> b = ExtractNumerals(p.reference);
    if (a.size() != b.size()) {
      out.push_back(std::nullopt);
      continue;
    }
    Decimal total;
    for (size_t i = 0; i < a.size(); ++i) total = total + NumericalDistance(a[i], b[i], mode_);
    const double d = total.ToDouble();
    out.push_back(reversed_ ? d : -d);
  }
  return out;
}

std::vector<std::optional<double>> RandomScorer::Score(const std::vector<ScorePair>& pairs) {
  std::vector<std::optional<double>> out;
  out.reserve(pairs.size());
  for (const ScorePair& p : pairs) {
    const uint64_t h = StableHash(p.candidate) * 0x9e3779b97f4a7c15ULL ^ StableHash(p.reference);
    Rng rng(seed_ ^ h);
    out.push_back(rng.Uniform01());
  }
  return out;
}

std::vector<std::optional<double>> ConstantScorer::Score(const std::vector<ScorePair>& pairs) {
  return std::vector<std::optional<double>>(pairs.size(), value_);
}

std::vector<std::optional<double>> LexicalScorer::Score(const std::vector<ScorePair>& pairs) {
  std::vector<std::optional<double>> out;
  out.reserve(pairs.size());
  for (const ScorePair& p : pairs) {
    out.push_back(LexicalOverlapScore(Tokenize(p.candidate), Tokenize(p.reference)));
  }
  return out;
}

std::vector<std::optional<double>> NumericAwareScorer::Score(const std::vector<ScorePair>& pairs) {
  std::vector<std::optional<double>> out;
  out.reserve(pairs.size());
  for (const ScorePair& p : pairs) out.push_back(NumericAwareScore(p.candidate, p.reference));
  return out;
}

std::vector<std::optional<double>> ProcessScorer::Score(const std::vector<ScorePair>& pairs) {
  std::vector<LineAdapter::Request> requests;
  requests.reserve(pairs.size());
  for (const ScorePair& p : pairs) {
    Json o;
    o["id"] = p.id;
    o["candidate"] = p.candidate;
    o["reference"] = p.reference;
    requests.push_back({p.id, o.dump()});
  }
  LineAdapter::Result result =
      adapter_.Exchange(requests, [](std::string_view line) -> std::optional<std::string> {
        Json o = Json::parse(line, nullptr, false);
        if (o.is_discarded() || !o.is_object() || !o.contains("id") || !o["id"].is_string()) {
          return std::nullopt;
        }
        return o["id"].get<std::string>();
      });
  failed_batches_ += result.failed_batches;
  std::vector<std::optional<double>> out;
  out.reserve(pairs.size());
  for (const ScorePair& p : pairs) {
    auto it = result.replies.find(p.id);
    if (it == result.replies.end()) {
      out.push_back(std::nullopt);
      continue;
    }
    const Json o = Json::parse(it->second);
    if (o.contains("score") && o["score"].is_number() && std::isfinite(o["score"].get<double>())) {
      out.push_back(o["score"].get<double>());
    } else {
      out.push_back(std::nullopt);
    }
  }
  return out;
}

std::vector<std::string_view> BuiltinScorerNames() {
  return {"oracle", "anti-oracle", "random", "constant", "lexical", "numeric-aware"};
}

absl::StatusOr<std::unique_ptr<Scorer>> MakeBuiltinScorer(std::string_view name,
                                                          DistanceMode mode, uint64_t seed) {
  const std::string folded = ToLower(Strip(name));
  if (folded == "oracle") return std::make_unique<OracleScorer>(mode);
  if (folded == "anti-oracle" || folded == "anti_oracle") {
    return std::make_unique<OracleScorer>(mode, /*reversed=*/true);
  }
  if (folded == "random") return std::make_unique<RandomScorer>(seed);
  if (folded == "constant") return std::make_unique<ConstantScorer>();
  if (folded == "lexical") return std::make_unique<LexicalScorer>();
  if (folded == "numeric-aware" || folded == "numeric_aware") {
    return std::make_unique<NumericAwareScorer>();
  }
  return absl::InvalidArgumentError(fmt::format("unknown scorer '{}'", name));
}

}  // namespace numprobe
