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


#include "numprobe/kendall.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fmt/format.h"

namespace numprobe {
namespace {

// Pairs within runs of equal keys, for a sequence sorted by that key.
template <typename Eq>
int64_t TiedPairs(size_t n, Eq equal) {
  int64_t ties = 0;
  int64_t run = 1;
  for (size_t i = 1; i <= n; ++i) {
    if (i < n && equal(i - 1, i)) {
      ++run;
    } else {
      ties += run * (run - 1) / 2;
      run = 1;
    }
  }
  return ties;
}

// Stable merge sort of `v`, returning the number of inversions.
int64_t SortCountingInversions(std::vector<double>& v) {
  std::vector<double> buffer(v.size());
  int64_t swaps = 0;
  for (size_t width = 1; width < v.size(); width *= 2) {
    for (size_t lo = 0; lo < v.size(); lo += 2 * width) {
      const size_t mid = std::min(lo + width, v.size());
      const size_t hi = std::min(lo + 2 * width, v.size());
      size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (v[j] < v[i]) {
          swaps += static_cast<int64_t>(mid - i);
          buffer[k++] = v[j++];
        } else {
          buffer[k++] = v[i++];
        }
      }
      while (i < mid) buffer[k++] = v[i++];
      while (j < hi) buffer[k++] = v[j++];
    }
    v.swap(buffer);
  }
  return swaps;
}

}  // namespace

absl::StatusOr<std::optional<double>> KendallTauB(std::span<const double> scores,
                                                  std::span<const double> distances) {
  if (scores.size() != distances.size()) {
    return absl::InvalidArgumentError(fmt::format(
        "tau_b needs equal lengths, got {} and {}", scores.size(), distances.size()));
  }
  const size_t n = scores.size();
  if (n < 2) return absl::InvalidArgumentError("tau_b needs at least 2 items");

  // Agreement of scores with negated distances.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] < scores[b];
    return -distances[a] < -distances[b];
  });
  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    x[i] = scores[order[i]];
    y[i] = -distances[order[i]];
  }
  const int64_t tied_x = TiedPairs(n, [&](size_t a, size_t b) { return x[a] == x[b]; });
  const int64_t tied_xy =
      TiedPairs(n, [&](size_t a, size_t b) { return x[a] == x[b] && y[a] == y[b]; });
  const int64_t swaps = SortCountingInversions(y);
  const int64_t tied_y = TiedPairs(n, [&](size_t a, size_t b) { return y[a] == y[b]; });

  const int64_t total = static_cast<int64_t>(n) * static_cast<int64_t>(n - 1) / 2;
  const int64_t score_side = total - tied_x;     // C + D + T_distance
  const int64_t distance_side = total - tied_y;  // C + D + T_score
  if (score_side == 0 || distance_side == 0) return std::optional<double>();
  const int64_t concordant_minus_discordant = total - tied_x - tied_y + tied_xy - 2 * swaps;
  return std::optional<double>(
      static_cast<double>(concordant_minus_discordant) /
      std::sqrt(static_cast<double>(score_side) * static_cast<double>(distance_side)));
}

}  // namespace numprobe
