// Copyright 2026 The chargelearn Authors
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

#ifndef CHARGELEARN_RNG_H
#define CHARGELEARN_RNG_H

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace chargelearn {

using Rng = std::mt19937_64;

/// Seed domains. Circuit generation and trajectory sampling never share a stream,
/// so one circuit can be reused across any number of shots.
enum class SeedDomain : uint64_t {
    Circuit = 0x43495243ULL,
    Trajectory = 0x5452414aULL,
    Reference = 0x52454652ULL,
    Labels = 0x4c41424cULL,
    Bootstrap = 0x424f4f54ULL,
    Split = 0x53504c54ULL,
};

/// splitmix64 finalizer.
uint64_t mix64(uint64_t x);

/// Derives a 64-bit seed from a base seed, a domain, and a path of stream indices.
uint64_t derive_seed(uint64_t base, SeedDomain domain, std::initializer_list<uint64_t> path = {});

/// Seeds the engine through std::seed_seq from a single derived 64-bit seed.
Rng rng_from_seed(uint64_t seed);

Rng make_rng(uint64_t base, SeedDomain domain, std::initializer_list<uint64_t> path = {});

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
/// Used instead of std::uniform_real_distribution so streams are identical across standard libraries.
double uniform01(Rng &rng);

/// Unbiased uniform integer in [0, n). Requires n > 0.
uint64_t uniform_index(Rng &rng, uint64_t n);

/// Fisher-Yates shuffle driven by uniform_index.
template <typename It>
void shuffle_range(It first, It last, Rng &rng) {
    auto n = static_cast<uint64_t>(last - first);
    for (uint64_t i = n; i > 1; i--) {
        uint64_t k = uniform_index(rng, i);
        std::swap(first[i - 1], first[k]);
    }
}

}  // namespace chargelearn

#endif
