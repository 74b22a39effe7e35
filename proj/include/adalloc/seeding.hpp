// Copyright 2026 The adalloc Authors.
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

#ifndef ADALLOC_SEEDING_HPP_
#define ADALLOC_SEEDING_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace adalloc {

// splitmix64 finalizer.
constexpr std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent sub-seed from a master seed, a fixed label and up to
// two indices. Sub-seeds depend only on their arguments, so the order in which
// consumers draw them (or whether they run concurrently) never matters.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::string_view label,
                                   std::uint64_t i = 0, std::uint64_t j = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the label
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = MixBits(master ^ h);
  s = MixBits(s ^ MixBits(i + 0x51ed27ULL));
  s = MixBits(s ^ MixBits(j + 0x2545f491ULL));
  return s;
}

// Uniform double in [0, 1) built from the top 53 bits. Used instead of
// std::uniform_real_distribution, whose output is not specified across
// standard library implementations.
inline double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi] by rejection; portable for the same reason.
inline std::uint64_t UniformInt(std::mt19937_64& rng, std::uint64_t lo,
                                std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();  // full 64-bit range
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + x % span;
}

}  // namespace adalloc

#endif  // ADALLOC_SEEDING_HPP_
