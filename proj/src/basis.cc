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

#include "chargelearn/basis.h"

#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace chargelearn {

BasisTable::BasisTable(uint32_t num_qubits) : num_qubits_(num_qubits), sectors_(num_qubits + 1) {
    if (num_qubits == 0 || num_qubits > kMaxTableQubits) {
        throw std::invalid_argument(
            "BasisTable: num_qubits must lie in [1, " + std::to_string(kMaxTableQubits) + "]");
    }
    size_t n = size_t{1} << num_qubits;
    index_.resize(n);
    for (size_t c = 0; c < n; c++) {
        auto &sector = sectors_[std::popcount(static_cast<Config>(c))];
        index_[c] = static_cast<uint32_t>(sector.size());
        sector.push_back(static_cast<Config>(c));
    }
}

std::shared_ptr<const BasisTable> BasisTable::for_size(uint32_t num_qubits) {
    static std::mutex mu;
    static std::map<uint32_t, std::shared_ptr<const BasisTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[num_qubits];
    if (!slot) {
        slot = std::make_shared<const BasisTable>(num_qubits);
    }
    return slot;
}

std::span<const Config> BasisTable::sector(int q) const {
    if (q < 0 || q > static_cast<int>(num_qubits_)) {
        throw std::out_of_range("charge " + std::to_string(q) + " outside [0, L]");
    }
    return sectors_[q];
}

Config initial_configuration(uint32_t num_qubits, int q) {
    if (num_qubits < 2 || num_qubits % 2 != 0 || num_qubits > 30) {
        throw std::invalid_argument("initial_configuration: num_qubits must be even and in [2, 30]");
    }
    Config c = 0;
    for (uint32_t i = 1; i < num_qubits; i += 2) {
        c |= Config{1} << i;
    }
    int half = static_cast<int>(num_qubits / 2);
    if (q == half) {
        return c;
    }
    if (q == half - 1) {
        return c & ~(Config{1} << (num_qubits - 1));
    }
    throw std::invalid_argument(
        "unsupported initial charge " + std::to_string(q) + " for L=" + std::to_string(num_qubits) +
        " (expected L/2 or L/2-1)");
}

}  // namespace chargelearn
