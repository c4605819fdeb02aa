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

#ifndef NUMPROBE_RANDOM_H_
#define NUMPROBE_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace numprobe {

// FNV-1a, 64 bit. Stable across platforms and runs.
uint64_t StableHash(std::string_view data);

// Seeded random stream with platform-independent output.
//
// std::mt19937_64's sequence is fixed by the standard, but the standard
// distributions are not, so the draws below are implemented directly on
// the raw 64-bit output.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  // Independent stream for (seed, stream_id), e.g. one per evaluation unit.
  static Rng ForStream(uint64_t seed, std::string_view stream_id);

  uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform01();
  // Uniform in [lo, hi).
  double Uniform(double lo, double hi);
  // Uniform integer in [lo, hi], inclusive. Requires lo <= hi.
  int64_t UniformInt(int64_t lo, int64_t hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace numprobe

#endif  // NUMPROBE_RANDOM_H_
