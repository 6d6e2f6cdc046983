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

#ifndef CHARGELEARN_STATE_VECTOR_H
#define CHARGELEARN_STATE_VECTOR_H

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "chargelearn/basis.h"
#include "chargelearn/circuit.h"
#include "chargelearn/rng.h"

namespace chargelearn {

/// Pure state stored as one amplitude block per populated charge sector.
///
/// Charge-conserving operations act inside each block, so the support never leaves the sectors
/// it started in. Only apply_x moves amplitude between sectors. A state built from two basis
/// configurations of different charge is the system half of (|Q0>|0>_R + |Q1>|1>_R)/sqrt(2):
/// the reference qubit never needs to be stored because the sectors are mutually orthogonal.
class StateVector {
   public:
    StateVector(std::shared_ptr<const BasisTable> basis, std::span<const std::pair<Config, Amplitude>> terms);

    static StateVector basis_state(uint32_t num_qubits, Config c);

    uint32_t num_qubits() const {
        return basis_->num_qubits();
    }
    const BasisTable &basis() const {
        return *basis_;
    }
    bool has_sector(int q) const;
    /// Charges whose block is allocated, ascending.
    std::vector<int> sectors() const;
    /// Empty span when the sector is not allocated.
    std::span<const Amplitude> block(int q) const;
    Amplitude amplitude(Config c) const;

    double norm_squared() const;
    /// Throws std::domain_error when the norm is zero.
    void normalize();

    /// Squared norm of the block of charge q.
    double sector_weight(int q) const;
    /// Variance of total charge sum_i (1 + Z_i)/2. Requires a normalized state.
    double charge_variance() const;
    /// Squared norm of the component with site occupied.
    double occupied_weight(uint32_t site) const;

    /// Two-site charge-conserving unitary; `sites.first` is the left factor of the basis order.
    void apply_gate(const GateParams &g, SitePair sites);
    /// Pauli X on one site; changes charge by one.
    void apply_x(uint32_t site);
    /// Multiplies amplitudes by `on_empty` or `on_occupied` depending on the site occupation.
    void apply_diagonal(uint32_t site, Amplitude on_empty, Amplitude on_occupied);

    /// Born-rule sample of a full configuration. Requires a normalized state.
    Config sample_configuration(Rng &rng) const;
    /// Replaces the state with the basis configuration c, keeping c's phase.
    void collapse_to(Config c);

   private:
    void check_site(uint32_t site) const;
    std::shared_ptr<const BasisTable> basis_;
    std::vector<std::vector<Amplitude>> blocks_;
};

}  // namespace chargelearn

#endif
