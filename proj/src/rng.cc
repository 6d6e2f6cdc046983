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

#include "chargelearn/rng.h"

#include <limits>
#include <stdexcept>

namespace chargelearn {

uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t base, SeedDomain domain, std::initializer_list<uint64_t> path) {
    uint64_t h = mix64(base ^ mix64(static_cast<uint64_t>(domain)));
    for (uint64_t p : path) {
        h = mix64(h ^ mix64(p + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

Rng rng_from_seed(uint64_t s) {
    std::seed_seq seq{
        static_cast<uint32_t>(s),
        static_cast<uint32_t>(s >> 32),
        static_cast<uint32_t>(mix64(s)),
        static_cast<uint32_t>(mix64(s) >> 32)};
    return Rng(seq);
}

Rng make_rng(uint64_t base, SeedDomain domain, std::initializer_list<uint64_t> path) {
    return rng_from_seed(derive_seed(base, domain, path));
}

double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t uniform_index(Rng &rng, uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_index: empty range");
    }
    // Rejection on the top partial block keeps every residue equally likely.
    uint64_t limit = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    while (true) {
        uint64_t r = rng();
        if (r < limit) {
            return r % n;
        }
    }
}

}  // namespace chargelearn
