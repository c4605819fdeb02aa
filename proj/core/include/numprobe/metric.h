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


// Similarity scorers. Builtin scorers run in-process; ProcessScorer talks to
// an external model through the scorer wire protocol.

#ifndef NUMPROBE_METRIC_H_
#define NUMPROBE_METRIC_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "numprobe/adapter.h"
#include "numprobe/distance.h"

namespace numprobe {

// Row-major cosine similarities: rows are candidate tokens, columns are
// reference tokens.
struct SimilarityMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;

  double at(size_t i, size_t j) const { return values[i * cols + j]; }
};

// Weighted mean over candidate tokens of each token's best match:
// sum_i w_i * max_j sim[i][j] / sum_i w_i. Errors on an empty matrix, a
// weight count other than rows, negative weights, a zero weight sum, or
// entries outside [-1, 1].
absl::StatusOr<double> GreedyMatchScore(const SimilarityMatrix& sim,
                                        const std::vector<double>& weights);

// Lowercased tokens: runs of letters/digits (non-ASCII bytes count as
// letters) and single punctuation characters. "3.56%" -> 3 . 56 %.
std::vector<std::string> Tokenize(std::string_view text);

// Unigram F1 over token multisets; 0 when either side is empty.
double LexicalOverlapScore(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Lexical overlap of the text outside numerals, times
// prod exp(-|v_a - v_b| / (|v_a| + 1e-9)) over numerals aligned by order.
double NumericAwareScore(std::string_view a, std::string_view b);

struct ScorePair {
  std::string id;
  std::string candidate;
  std::string reference;
};

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string name() const = 0;
  // One entry per pair, in order; nullopt marks a pair that could not be
  // scored.
  virtual std::vector<std::optional<double>> Score(const std::vector<ScorePair>& pairs) = 0;
};

// -sum of numeric distances over numerals aligned by order (negated for the
// anti-oracle). Pairs whose numeral counts differ are not scored.
class OracleScorer : public Scorer {
 public:
  explicit OracleScorer(DistanceMode mode, bool reversed = false)
      : mode_(mode), reversed_(reversed) {}
  std::string name() const override { return reversed_ ? "anti-oracle" : "oracle"; }
  std::vector<std::optional<double>> Score(const std::vector<ScorePair>& pairs) override;

 private:
  DistanceMode mode_;
  bool reversed_;
};

// Uniform in [0, 1), a pure function of (seed, candidate, reference).
class RandomScorer : public Scorer {
 public:
  explicit RandomScorer(uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random"; }
  std::vector<std::optional<double>> Score(const std::vector<ScorePair>& pairs) override;

 private:
  uint64_t seed_;
};

class ConstantScorer : public Scorer {
 public:
  explicit ConstantScorer(double value = 1.0) : value_(value) {}
  std::string name() const override { return "constant"; }
  std::vector<std::optional<double>> Score(const std::vector<ScorePair>& pairs) override;

 private:
  double value_;
};

class LexicalScorer : public Scorer {
 public:
  std::string name() const override { return "lexical"; }
  std::vector<std::optional<double>> Score(const std::vector<ScorePair>& pairs) override;
};

class NumericAwareScorer : public Scorer {
 public:
  std::string name() const override { return "numeric-aware"; }
  std::vector<std::optional<double>> Score(const std::vector<ScorePair>& pairs) override;
};

// Scorer wire protocol:
//   request {"id", "candidate", "reference"}
//   reply   {"id", "score": number}   ({"id", "error"} marks a failed pair)
class ProcessScorer : public Scorer {
 public:
  ProcessScorer(std::string name, AdapterOptions options)
      : name_(std::move(name)), adapter_(std::move(options)) {}
  std::string name() const override { return name_; }
  std::vector<std::optional<double>> Score(const std::vector<ScorePair>& pairs) override;
  int failed_batches() const { return failed_batches_; }

 private:
  std::string name_;
  LineAdapter adapter_;
  int failed_batches_ = 0;
};

// "oracle", "anti-oracle", "random", "constant", "lexical", "numeric-aware".
std::vector<std::string_view> BuiltinScorerNames();
absl::StatusOr<std::unique_ptr<Scorer>> MakeBuiltinScorer(std::string_view name,
                                                          DistanceMode mode, uint64_t seed);

}  // namespace numprobe

#endif  // NUMPROBE_METRIC_H_
