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

#ifndef CHARGELEARN_SIMULATOR_H
#define CHARGELEARN_SIMULATOR_H

#include <utility>
#include <vector>

#include "chargelearn/circuit.h"
#include "chargelearn/record.h"
#include "chargelearn/rng.h"
#include "chargelearn/state_vector.h"

namespace chargelearn {

/// cos(gamma pi / 2) and sin(gamma pi / 2), exact at gamma = 0 and gamma = 1.
struct KrausAmplitudes {
    double cos_half = 1;
    double sin_half = 0;
};

/// Throws std::invalid_argument for gamma outside [0, 1].
KrausAmplitudes kraus_amplitudes(double gamma);

/// Weak charge measurement of one qubit, realized directly as the Kraus pair
///
///     K0 = |0><0| + cos(gamma pi/2) |1><1|,     K1 = i sin(gamma pi/2) |1><1|,
///
/// which is what an ancilla rotated by a controlled R_x(gamma pi) and then read out does to the system.
struct OutcomeProbabilities {
    double p0 = 1;
    double p1 = 0;
};

/// ||K_b psi||^2 / ||psi||^2 for both outcomes. Throws std::domain_error on a zero-norm state.
OutcomeProbabilities outcome_probabilities(const StateVector &state, uint32_t site, double gamma);

/// Applies K_b without renormalizing.
void apply_kraus(StateVector &state, uint32_t site, double gamma, uint8_t bit);

struct MeasureResult {
    uint8_t bit = 0;
    double probability = 1;
};

MeasureResult weak_measure(StateVector &state, uint32_t site, double gamma, Rng &rng);
/// Z-basis projective measurement; same outcome distribution as weak_measure at gamma = 1.
MeasureResult projective_measure(StateVector &state, uint32_t site, Rng &rng);

/// Applies K_b for a prescribed outcome and returns its probability. The state is renormalized
/// unless the probability is below kZeroProbability, in which case it is left untouched.
double force_outcome(StateVector &state, uint32_t site, double gamma, uint8_t bit);

/// Charge-violating gate error: after every two-qubit gate, with probability p2q, an X flip
/// hits one of the gate's two sites chosen uniformly.
struct NoiseModel {
    double p2q = 0;

    bool active() const {
        return p2q > 0;
    }
    void validate() const;
};

/// Alternating basis state of charge q (q = L/2 or L/2 - 1). Scrambling is part of the circuit.
StateVector prepare_initial_state(uint32_t num_qubits, int q);

/// Samples one monitored trajectory starting from charge q. Fills the record, the terminal
/// readout, and the sampling log-probability; decoders are left empty.
TrajectoryResult run_trajectory(const CircuitSpec &spec, int q, Rng &rng, const NoiseModel &noise = {});

/// log P(M | q, U) by replaying the circuit with every recorded outcome forced.
/// Returns -infinity when some forced outcome has probability below kZeroProbability.
double record_log_likelihood(const CircuitSpec &spec, int q, const MeasurementRecord &record);

/// log P(M | q, U) for every candidate charge, in spec order.
std::vector<double> postbqp_log_likelihoods(const CircuitSpec &spec, const MeasurementRecord &record);
Posterior postbqp_posterior(const CircuitSpec &spec, const MeasurementRecord &record);
DecodedCharge decode_postbqp(const CircuitSpec &spec, const MeasurementRecord &record, int true_charge);

/// Base-2 binary entropy with 0 log 0 = 0.
double binary_entropy(double p);

enum class EntropyTiming {
    /// After the last brick layer's measurement sweep.
    BeforeTerminalSweep,
    /// After the terminal readout as well (always zero; kept for comparison).
    AfterTerminalSweep,
};

struct ReferenceTrajectory {
    MeasurementRecord record;
    /// Von Neumann entropy of the reference qubit, in bits.
    double reference_entropy = 0;
    /// Charge variance of the normalized system state after each measurement sweep.
    std::vector<double> sweep_charge_variance;
};

/// Runs the circuit on (|Q0>|0>_R + |Q1>|1>_R)/sqrt(2). Gates and measurements never touch R, and the
/// system sectors are orthogonal, so rho_R = diag(w0, w1) with w_i the weight of sector Q_i.
ReferenceTrajectory run_reference_trajectory(
    const CircuitSpec &spec,
    std::pair<int, int> charges,
    Rng &rng,
    EntropyTiming timing = EntropyTiming::BeforeTerminalSweep);

}  // namespace chargelearn

#endif
