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

#include "numprobe/decimal.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace numprobe {
namespace {

using Wide = __int128;

constexpr int64_t kPow10[] = {1LL,
                              10LL,
                              100LL,
                              1000LL,
                              10000LL,
                              100000LL,
                              1000000LL,
                              10000000LL,
                              100000000LL,
                              1000000000LL,
                              10000000000LL,
                              100000000000LL,
                              1000000000000LL,
                              10000000000000LL,
                              100000000000000LL,
                              1000000000000000LL,
                              10000000000000000LL,
                              100000000000000000LL,
                              1000000000000000000LL};

Wide Pow10Wide(int n) {
  Wide r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

int64_t Narrow(Wide v) {
  if (v > std::numeric_limits<int64_t>::max() ||
      v < std::numeric_limits<int64_t>::min()) {
    throw std::overflow_error("numprobe::Decimal overflow");
  }
  return static_cast<int64_t>(v);
}

// Rescales `v` at `from` places to `to` places, rounding half away from zero.
Wide Rescale(Wide v, int from, int to) {
  if (to >= from) return v * Pow10Wide(to - from);
  const Wide div = Pow10Wide(from - to);
  Wide q = v / div;
  const Wide r = v % div;
  const Wide twice = (r < 0 ? -r : r) * 2;
  if (twice >= div) q += (v < 0 ? -1 : 1);
  return q;
}

}  // namespace

absl::StatusOr<Decimal> Decimal::Parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) {
    return absl::InvalidArgumentError(fmt::format("not a decimal: '{}'", text));
  }
  Wide unscaled = 0;
  int scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : s) {
    if (c == '.' && !seen_point && seen_digit) {
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') {
      return absl::InvalidArgumentError(fmt::format("not a decimal: '{}'", text));
    }
    seen_digit = true;
    unscaled = unscaled * 10 + (c - '0');
    if (seen_point) ++scale;
    if (unscaled > std::numeric_limits<int64_t>::max() || scale > kMaxScale) {
      return absl::OutOfRangeError(fmt::format("decimal out of range: '{}'", text));
    }
  }
  if (!seen_digit || s.back() == '.') {
    return absl::InvalidArgumentError(fmt::format("not a decimal: '{}'", text));
  }
  return Decimal(static_cast<int64_t>(negative ? -unscaled : unscaled), scale);
}

Decimal Decimal::FromDouble(double value, int scale) {
  const long double scaled = static_cast<long double>(value) * kPow10[scale];
  const long double rounded = std::round(scaled);
  return Decimal(static_cast<int64_t>(rounded), scale);
}

bool Decimal::IsInteger() const { return unscaled_ % kPow10[scale_] == 0; }

Decimal Decimal::WithScale(int scale) const {
  return Decimal(Narrow(Rescale(unscaled_, scale_, scale)), scale);
}

Decimal Decimal::Normalized() const {
  int64_t u = unscaled_;
  int s = scale_;
  while (s > 0 && u % 10 == 0) {
    u /= 10;
    --s;
  }
  return Decimal(u, s);
}

Decimal Decimal::ShiftPow10(int exponent) const {
  if (exponent >= 0) {
    if (scale_ >= exponent) return Decimal(unscaled_, scale_ - exponent);
    return Decimal(Narrow(Wide(unscaled_) * Pow10Wide(exponent - scale_)), 0);
  }
  return Decimal(unscaled_, scale_ - exponent);
}

int64_t Decimal::Truncated() const { return unscaled_ / kPow10[scale_]; }

double Decimal::ToDouble() const {
  return static_cast<double>(static_cast<long double>(unscaled_) / kPow10[scale_]);
}

std::string Decimal::ToString() const {
  const bool negative = unscaled_ < 0;
  Wide mag = unscaled_;
  if (negative) mag = -mag;
  std::string digits;
  do {
    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  } while (mag > 0);
  if (scale_ > 0) {
    if (static_cast<int>(digits.size()) <= scale_) {
      digits.insert(0, static_cast<size_t>(scale_ + 1 - static_cast<int>(digits.size())), '0');
    }
    digits.insert(digits.size() - static_cast<size_t>(scale_), 1, '.');
  }
  return negative ? "-" + digits : digits;
}

Decimal operator+(const Decimal& a, const Decimal& b) {
  const int s = std::max(a.scale_, b.scale_);
  return Decimal(Narrow(Rescale(a.unscaled_, a.scale_, s) + Rescale(b.unscaled_, b.scale_, s)), s);
}

Decimal operator-(const Decimal& a, const Decimal& b) { return a + (-b); }

Decimal operator*(const Decimal& a, const Decimal& b) {
  return Decimal(Narrow(Wide(a.unscaled_) * b.unscaled_), a.scale_ + b.scale_);
}

bool operator==(const Decimal& a, const Decimal& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  const int s = std::max(a.scale_, b.scale_);
  const Wide x = Rescale(a.unscaled_, a.scale_, s);
  const Wide y = Rescale(b.unscaled_, b.scale_, s);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Decimal& d) {
  return os << d.ToString();
}

}  // namespace numprobe
