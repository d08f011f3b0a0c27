// Copyright 2026 The Simprobe Authors.
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

#ifndef SIMPROBE_COMMON_RANDOM_H_
#define SIMPROBE_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace simprobe {

// All pipeline randomness goes through Rng seeded from configuration. The
// helpers below avoid the implementation-defined standard distributions so
// results are identical across standard libraries.
using Rng = std::mt19937_64;

uint64_t SplitMix64(uint64_t x);
uint64_t MixSeed(uint64_t seed, uint64_t salt);
uint64_t Fnv1a64(std::string_view text);

// Uniform integer in [0, n). n must be positive.
uint64_t UniformIndex(Rng &rng, uint64_t n);

// Uniform real in [0, 1) with 53 bits of precision.
double UniformReal(Rng &rng);

// Standard normal via Box-Muller.
double StandardNormal(Rng &rng);

template <typename T>
void Shuffle(std::vector<T> &values, Rng &rng) {
  for (size_t i = values.size(); i > 1; --i) {
    size_t j = UniformIndex(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace simprobe

#endif  // SIMPROBE_COMMON_RANDOM_H_
