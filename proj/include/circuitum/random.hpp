// Copyright 2026 The Circuitum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace circuitum {

/// Uniform draw from [0, n), n >= 1, by rejection sampling. Unlike
/// std::uniform_int_distribution the result is identical on every platform,
/// which keeps seeded runs reproducible everywhere.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t cutoff = max - max % n;
  for (;;) {
    const std::uint64_t draw = rng();
    if (draw < cutoff) return draw % n;
  }
}

inline bool rand_bit(std::mt19937_64& rng) { return rand_below(rng, 2) == 1; }

}  // namespace circuitum
