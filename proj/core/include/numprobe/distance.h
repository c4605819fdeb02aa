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


#ifndef NUMPROBE_DISTANCE_H_
#define NUMPROBE_DISTANCE_H_

#include <string_view>

#include "absl/status/statusor.h"
#include "numprobe/decimal.h"
#include "numprobe/numeral.h"

namespace numprobe {

enum class DistanceMode {
  kSurface,         // |v(a) - v(b)| on surface values ("15M" counts as 15)
  kUnitNormalized,  // scale words and duration units applied first
};

std::string_view DistanceModeName(DistanceMode mode);  // "surface", "unit_normalized"
absl::StatusOr<DistanceMode> ParseDistanceMode(std::string_view name);

// Absolute difference between two mention values.
Decimal NumericalDistance(const NumeralMention& base, const NumeralMention& variant,
                          DistanceMode mode = DistanceMode::kSurface);

// Same for two strings that each hold exactly one numeral, e.g.
// ("3.56", "4") -> 0.44.
absl::StatusOr<Decimal> NumericalDistance(std::string_view base, std::string_view variant,
                                          DistanceMode mode = DistanceMode::kSurface);

}  // namespace numprobe

#endif  // NUMPROBE_DISTANCE_H_
