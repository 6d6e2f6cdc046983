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

#ifndef CHARGELEARN_SEP_DECODER_H
#define CHARGELEARN_SEP_DECODER_H

#include <memory>
#include <span>
#include <vector>

#include "chargelearn/basis.h"
#include "chargelearn/circuit.h"
#include "chargelearn/record.h"

namespace chargelearn {

/// Unnormalized weights over the configurations of one charge sector.
///
/// Averaging Born probabilities over the unknown gate phases removes every interference term,
/// so the diagonal of the density matrix evolves on its own as a noisy symmetric exclusion
/// process: a gate hops a particle across its bond with probability sin^2(theta), and a weak
/// measurement multiplies each configuration by the classical likelihood of the outcome.
/// Weights are kept normalized; the phase-marginalized probability of the outcomes so far
/// is carried separately as a log.
class ClassicalDistribution {
   public:
    /// Unit mass on the prepared initial configuration of charge q.
    static ClassicalDistribution initial(uint32_t num_qubits, int q);

    uint32_t num_qubits() const {
        return basis_->num_qubits();
    }
    int charge() const {
        return charge_;
    }
    std::span<const double> weights() const {
        return weights_;
    }
    double weight(Config c) const;
    double total_mass() const;
    /// Sum of log conditional outcome probabilities; -infinity once an update left less
    /// than kZeroProbability of the mass.
    double log_likelihood() const {
        return log_likelihood_;
    }

    /// w'(01) = cos^2 w(01) + sin^2 w(10) on every pair differing by a swap across the sites.
    /// Conserves total mass.
    void apply_gate_transfer(double theta, SitePair sites);

    /// Outcome 1: q_site = 0 weights vanish, q_site = 1 weights scale by sin^2(gamma pi/2).
    /// Outcome 0: q_site = 1 weights scale by cos^2(gamma pi/2).
    /// The surviving mass is added to the log-likelihood and the weights renormalized.
    void apply_measurement_update(uint32_t site, uint8_t outcome, double gamma);

   private:
    ClassicalDistribution(std::shared_ptr<const BasisTable> basis, int q);
    void check_site(uint32_t site) const;

    std::shared_ptr<const BasisTable> basis_;
    int charge_;
    std::vector<double> weights_;
    double log_likelihood_ = 0;
};

/// log P'(M | q) for every candidate charge: scrambling and brick gates propagate through their
/// theta alone, recorded outcomes apply measurement updates.
std::vector<double> sep_log_likelihoods(const CircuitSpec &spec, const MeasurementRecord &record);
Posterior sep_posterior(const CircuitSpec &spec, const MeasurementRecord &record);
DecodedCharge decode_sep(const CircuitSpec &spec, const MeasurementRecord &record, int true_charge);

}  // namespace chargelearn

#endif
