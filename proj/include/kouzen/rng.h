// Copyright 2026 The kouzen Authors
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
#include <cstddef>
#include <vector>

// Self-contained randomness, fully pinned so that outputs are
// byte-identical across platforms and standard libraries. std::shuffle
// and std::uniform_int_distribution are deliberately avoided: their
// output is implementation-defined.

namespace kouzen {

// Sebastiano Vigna's splitmix64. One 64-bit state word, one output per
// step.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection sampling; n must be > 0.
  uint64_t Bounded(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = Next();
    } while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double NextDouble() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t state_;
};

// Derives an independent stream seed from a base seed and a stream
// index (sentence index, bootstrap iteration, dataset id). Pinned:
//   MixSeed(seed, k) = SplitMix64(seed XOR (0x9E3779B97F4A7C15 * (k+1))).Next()
inline uint64_t MixSeed(uint64_t seed, uint64_t stream) {
  return SplitMix64(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))).Next();
}

// Fisher-Yates permutation of [0, count) driven by SplitMix64(seed).
inline std::vector<size_t> ShuffledIndices(size_t count, uint64_t seed) {
  std::vector<size_t> idx(count);
  for (size_t i = 0; i < count; ++i) idx[i] = i;
  SplitMix64 rng(seed);
  for (size_t i = count; i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.Bounded(i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

}  // namespace kouzen
