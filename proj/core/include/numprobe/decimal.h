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

#ifndef NUMPROBE_DECIMAL_H_
#define NUMPROBE_DECIMAL_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace numprobe {

// Exact fixed-point decimal: value = unscaled * 10^-scale.
//
// The scale is part of the representation (3.5 and 3.50 have different
// scales) but not of the value: equality and ordering compare numerically.
// This is what lets a perturbed number keep the decimal-place count of the
// surface form it came from, while distances such as |3.56 - 4| stay exact.
class Decimal {
 public:
  static constexpr int kMaxScale = 12;

  constexpr Decimal() = default;
  constexpr Decimal(int64_t unscaled, int scale)
      : unscaled_(unscaled), scale_(scale) {}

  static Decimal FromInt(int64_t value) { return Decimal(value, 0); }

  // Parses "[-]digits[.digits]". No separators, exponents or symbols.
  static absl::StatusOr<Decimal> Parse(std::string_view text);

  // Rounds half away from zero to `scale` places.
  static Decimal FromDouble(double value, int scale);

  int64_t unscaled() const { return unscaled_; }
  int scale() const { return scale_; }

  bool IsZero() const { return unscaled_ == 0; }
  bool IsNegative() const { return unscaled_ < 0; }
  bool IsInteger() const;

  // Same value with a different scale. Narrowing rounds half away from zero.
  Decimal WithScale(int scale) const;
  // Smallest scale that still represents the value exactly.
  Decimal Normalized() const;
  // Multiplies by 10^exponent (exponent may be negative); exact.
  Decimal ShiftPow10(int exponent) const;

  Decimal Abs() const { return Decimal(unscaled_ < 0 ? -unscaled_ : unscaled_, scale_); }
  Decimal operator-() const { return Decimal(-unscaled_, scale_); }

  // Integer part truncated toward zero. Requires |value| < 2^63.
  int64_t Truncated() const;

  double ToDouble() const;
  // Plain notation with exactly scale() fractional digits, e.g. "-0.440".
  std::string ToString() const;

  friend Decimal operator+(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a, const Decimal& b);
  // Exact product; the result scale is the sum of the operand scales.
  friend Decimal operator*(const Decimal& a, const Decimal& b);

  friend bool operator==(const Decimal& a, const Decimal& b);
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

 private:
  int64_t unscaled_ = 0;
  int scale_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Decimal& d);

}  // namespace numprobe

#endif  // NUMPROBE_DECIMAL_H_
