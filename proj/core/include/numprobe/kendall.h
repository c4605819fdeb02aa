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


#ifndef NUMPROBE_KENDALL_H_
#define NUMPROBE_KENDALL_H_

#include <optional>
#include <span>

#include "absl/status/statusor.h"

namespace numprobe {

// Kendall's tau-b between predicted similarities and gold distances.
//
// A pair is concordant when the item with the smaller distance has the
// strictly higher score, discordant when it has the strictly lower score.
// tau_b = (C - D) / sqrt((C + D + T_score) * (C + D + T_distance)), where
// T_x counts pairs tied on x only. Runs in O(n log n).
//
// Returns nullopt (undefined) when either list is fully tied, and
// InvalidArgument when the lengths differ or are below 2.
absl::StatusOr<std::optional<double>> KendallTauB(std::span<const double> scores,
                                                  std::span<const double> distances);

}  // namespace numprobe

#endif  // NUMPROBE_KENDALL_H_
