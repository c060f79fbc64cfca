// Copyright 2026 The pcnhijack Authors
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

// Portable random helpers. std::*_distribution output is implementation
// defined, so everything that feeds a golden file or a CSV goes through
// these instead.

#ifndef PCNHIJACK_RANDOM_H_
#define PCNHIJACK_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace pcnhijack {

using Rng = std::mt19937_64;

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Keyed 64-bit mix; stands in for a keyed hash of (key, value).
inline std::uint64_t KeyedHash(std::uint64_t key, std::uint64_t value) {
  return SplitMix64(SplitMix64(key) ^ (value * 0xD6E8FEB86659FD93ULL));
}

// Uniform double in [0, 1).
inline double UnitDouble(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double UniformReal(Rng& rng) { return UnitDouble(rng()); }

// Uniform integer in [0, n). n must be positive.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Standard normal from two independent 64-bit words (Box-Muller).
inline double StandardNormal(std::uint64_t u_bits, std::uint64_t v_bits) {
  const double u = 1.0 - UnitDouble(u_bits);  // (0, 1]
  const double v = UnitDouble(v_bits);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// Derives an independent stream for item `index` of a run seeded by `seed`.
inline Rng DeriveRng(std::uint64_t seed, std::uint64_t index) {
  return Rng(KeyedHash(seed, index));
}

}  // namespace pcnhijack

#endif  // PCNHIJACK_RANDOM_H_
