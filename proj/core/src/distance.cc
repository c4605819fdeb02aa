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


#include "numprobe/distance.h"

#include "fmt/format.h"
#include "text_util.h"

namespace numprobe {

std::string_view DistanceModeName(DistanceMode mode) {
  return mode == DistanceMode::kSurface ? "surface" : "unit_normalized";
}

absl::StatusOr<DistanceMode> ParseDistanceMode(std::string_view name) {
  const std::string folded = ToLower(Strip(name));
  if (folded == "surface") return DistanceMode::kSurface;
  if (folded == "unit_normalized" || folded == "unit-normalized") {
    return DistanceMode::kUnitNormalized;
  }
  return absl::InvalidArgumentError(fmt::format("unknown distance mode '{}'", name));
}

Decimal NumericalDistance(const NumeralMention& base, const NumeralMention& variant,
                          DistanceMode mode) {
  if (mode == DistanceMode::kSurface) return (base.value - variant.value).Abs();
  return (UnitNormalizedValue(base.value, base.style) -
          UnitNormalizedValue(variant.value, variant.style))
      .Abs();
}

absl::StatusOr<Decimal> NumericalDistance(std::string_view base, std::string_view variant,
                                          DistanceMode mode) {
  absl::StatusOr<NumeralMention> a = ParseMention(base);
  if (!a.ok()) return a.status();
  absl::StatusOr<NumeralMention> b = ParseMention(variant);
  if (!b.ok()) return b.status();
  return NumericalDistance(*a, *b, mode);
}

}  // namespace numprobe
