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

#ifndef CHARGELEARN_BASIS_H
#define CHARGELEARN_BASIS_H

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace chargelearn {

/// A computational basis configuration. Bit i is the charge (occupation) of site i.
using Config = uint32_t;

inline constexpr uint32_t kMaxTableQubits = 24;

inline bool occupied(Config c, uint32_t site) {
    return (c >> site) & 1u;
}

/// Enumerates every fixed-charge sector of an L-qubit chain and maps each configuration to
/// its position inside its sector. Immutable; one shared instance per L.
class BasisTable {
   public:
    explicit BasisTable(uint32_t num_qubits);

    /// Cached, thread-safe accessor.
    static std::shared_ptr<const BasisTable> for_size(uint32_t num_qubits);

    uint32_t num_qubits() const {
        return num_qubits_;
    }
    /// Configurations of charge q in increasing numeric order. Size C(L, q).
    std::span<const Config> sector(int q) const;
    size_t sector_size(int q) const {
        return sector(q).size();
    }
    /// Position of `c` inside sector(popcount(c)).
    uint32_t index_of(Config c) const {
        return index_[c];
    }

   private:
    uint32_t num_qubits_;
    std::vector<std::vector<Config>> sectors_;
    std::vector<uint32_t> index_;
};

/// Alternating |0101...01> for q = L/2; the last site emptied for q = L/2 - 1.
/// Throws std::invalid_argument for any other charge.
Config initial_configuration(uint32_t num_qubits, int q);

}  // namespace chargelearn

#endif
