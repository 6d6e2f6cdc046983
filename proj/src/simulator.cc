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

#include "chargelearn/simulator.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chargelearn {

KrausAmplitudes kraus_amplitudes(double gamma) {
    if (!(gamma >= 0 && gamma <= 1)) {
        throw std::invalid_argument("measurement strength must lie in [0, 1], got " + std::to_string(gamma));
    }
    if (gamma == 0) {
        return {1.0, 0.0};
    }
    if (gamma == 1) {
        return {0.0, 1.0};
    }
    double half = gamma * std::numbers::pi / 2;
    return {std::cos(half), std::sin(half)};
}

OutcomeProbabilities outcome_probabilities(const StateVector &state, uint32_t site, double gamma) {
    KrausAmplitudes k = kraus_amplitudes(gamma);
    double total = state.norm_squared();
    if (!(total > 0)) {
        throw std::domain_error("cannot measure a zero-norm state");
    }
    OutcomeProbabilities p;
    if (k.sin_half == 0) {
        // K0 = I; keep the blind limit exact instead of (total - w1 + w1) / total.
        return p;
    }
    double w1 = state.occupied_weight(site);
    double w0 = total - w1;
    p.p0 = (w0 + k.cos_half * k.cos_half * w1) / total;
    p.p1 = (k.sin_half * k.sin_half * w1) / total;
    return p;
}

void apply_kraus(StateVector &state, uint32_t site, double gamma, uint8_t bit) {
    KrausAmplitudes k = kraus_amplitudes(gamma);
    if (bit == 0) {
        state.apply_diagonal(site, Amplitude{1}, Amplitude{k.cos_half});
    } else if (bit == 1) {
        state.apply_diagonal(site, Amplitude{0}, Amplitude{0, k.sin_half});
    } else {
        throw std::invalid_argument("outcome bit must be 0 or 1");
    }
}

MeasureResult weak_measure(StateVector &state, uint32_t site, double gamma, Rng &rng) {
    OutcomeProbabilities p = outcome_probabilities(state, site, gamma);
    MeasureResult r;
    r.bit = uniform01(rng) < p.p1 ? 1 : 0;
    r.probability = r.bit ? p.p1 : p.p0;
    apply_kraus(state, site, gamma, r.bit);
    state.normalize();
    return r;
}

MeasureResult projective_measure(StateVector &state, uint32_t site, Rng &rng) {
    OutcomeProbabilities p = outcome_probabilities(state, site, 1.0);
    MeasureResult r;
    r.bit = uniform01(rng) < p.p1 ? 1 : 0;
    r.probability = r.bit ? p.p1 : p.p0;
    if (r.bit) {
        state.apply_diagonal(site, Amplitude{0}, Amplitude{1});
    } else {
        state.apply_diagonal(site, Amplitude{1}, Amplitude{0});
    }
    state.normalize();
    return r;
}

double force_outcome(StateVector &state, uint32_t site, double gamma, uint8_t bit) {
    OutcomeProbabilities p = outcome_probabilities(state, site, gamma);
    double prob = bit ? p.p1 : p.p0;
    if (prob < kZeroProbability) {
        return prob;
    }
    apply_kraus(state, site, gamma, bit);
    state.normalize();
    return prob;
}

void NoiseModel::validate() const {
    if (!(p2q >= 0 && p2q <= 1)) {
        throw std::invalid_argument("p2q must lie in [0, 1]");
    }
}

StateVector prepare_initial_state(uint32_t num_qubits, int q) {
    return StateVector::basis_state(num_qubits, initial_configuration(num_qubits, q));
}

namespace {

void apply_layer(StateVector &state, const GateLayer &layer, Rng *rng, const NoiseModel &noise, uint32_t &faults) {
    for (const auto &gate : layer) {
        state.apply_gate(gate.params, gate.sites);
        if (noise.active() && uniform01(*rng) < noise.p2q) {
            uint32_t site = uniform01(*rng) < 0.5 ? gate.sites.first : gate.sites.second;
            state.apply_x(site);
            faults++;
        }
    }
}

void run_scrambling(const CircuitSpec &spec, StateVector &state, Rng *rng, const NoiseModel &noise, uint32_t &faults) {
    for (const auto &layer : spec.scramble_layers) {
        apply_layer(state, layer, rng, noise, faults);
    }
}

/// One measurement sweep after brick layer `step`, sampled according to the plan.
void sample_sweep(
    const CircuitSpec &spec, uint32_t step, StateVector &state, Rng &rng, MeasurementRecord &record, double &log_p) {
    const uint32_t n = spec.num_qubits;
    if (spec.plan.kind() == MeasurementKind::WeakAll) {
        double gamma = spec.plan.gamma();
        for (uint32_t site = 0; site < n; site++) {
            auto r = weak_measure(state, site, gamma, rng);
            record.outcomes.push_back({step, site, r.bit});
            log_p += std::log(r.probability);
        }
    } else {
        double p = spec.plan.p();
        for (uint32_t site = 0; site < n; site++) {
            if (!(uniform01(rng) < p)) {
                continue;
            }
            auto r = projective_measure(state, site, rng);
            record.outcomes.push_back({step, site, r.bit});
            log_p += std::log(r.probability);
        }
    }
}

void check_charge(const CircuitSpec &spec, int q) {
    if (!spec.is_candidate(q)) {
        throw std::invalid_argument("charge " + std::to_string(q) + " is not a candidate charge of this circuit");
    }
}

}  // namespace

TrajectoryResult run_trajectory(const CircuitSpec &spec, int q, Rng &rng, const NoiseModel &noise) {
    check_charge(spec, q);
    noise.validate();
    TrajectoryResult result;
    result.true_charge = q;
    StateVector state = prepare_initial_state(spec.num_qubits, q);

    run_scrambling(spec, state, &rng, noise, result.injected_faults);
    for (uint32_t step = 0; step < spec.depth; step++) {
        apply_layer(state, spec.brick_layers[step], &rng, noise, result.injected_faults);
        sample_sweep(spec, step, state, rng, result.record, result.sampling_log_probability);
    }

    Config final_config = state.sample_configuration(rng);
    std::vector<uint8_t> occupations(spec.num_qubits);
    for (uint32_t site = 0; site < spec.num_qubits; site++) {
        occupations[site] = occupied(final_config, site) ? 1 : 0;
    }
    result.record.final_occupations = std::move(occupations);
    result.final_measured_charge = std::popcount(final_config);
    return result;
}

double record_log_likelihood(const CircuitSpec &spec, int q, const MeasurementRecord &record) {
    check_charge(spec, q);
    check_schedule(spec, record);
    const double strength = spec.plan.measurement_strength();
    StateVector state = prepare_initial_state(spec.num_qubits, q);
    NoiseModel none;
    uint32_t faults = 0;
    run_scrambling(spec, state, nullptr, none, faults);

    double log_p = 0;
    size_t next = 0;
    const auto &outs = record.outcomes;
    for (uint32_t step = 0; step < spec.depth; step++) {
        apply_layer(state, spec.brick_layers[step], nullptr, none, faults);
        for (; next < outs.size() && outs[next].step == step; next++) {
            double prob = force_outcome(state, outs[next].site, strength, outs[next].bit);
            if (prob < kZeroProbability) {
                return kNegativeInfinity;
            }
            log_p += std::log(prob);
        }
    }
    return log_p;
}

std::vector<double> postbqp_log_likelihoods(const CircuitSpec &spec, const MeasurementRecord &record) {
    std::vector<double> out;
    out.reserve(spec.candidate_charges.size());
    for (int q : spec.candidate_charges) {
        out.push_back(record_log_likelihood(spec, q, record));
    }
    return out;
}

Posterior postbqp_posterior(const CircuitSpec &spec, const MeasurementRecord &record) {
    return posterior_from_log_likelihoods(postbqp_log_likelihoods(spec, record));
}

DecodedCharge decode_postbqp(const CircuitSpec &spec, const MeasurementRecord &record, int true_charge) {
    return assess(postbqp_log_likelihoods(spec, record), spec.candidate_charges, true_charge);
}

double binary_entropy(double p) {
    auto term = [](double x) {
        return x > 0 ? -x * std::log2(x) : 0.0;
    };
    return term(p) + term(1 - p);
}

ReferenceTrajectory run_reference_trajectory(
    const CircuitSpec &spec, std::pair<int, int> charges, Rng &rng, EntropyTiming timing) {
    auto [q0, q1] = charges;
    if (q0 == q1) {
        throw std::invalid_argument("reference trajectory needs two distinct charges");
    }
    check_charge(spec, q0);
    check_charge(spec, q1);

    const double amp = 1 / std::numbers::sqrt2;
    std::pair<Config, Amplitude> terms[] = {
        {initial_configuration(spec.num_qubits, q0), Amplitude{amp}},
        {initial_configuration(spec.num_qubits, q1), Amplitude{amp}},
    };
    StateVector state(BasisTable::for_size(spec.num_qubits), terms);

    ReferenceTrajectory out;
    NoiseModel none;
    uint32_t faults = 0;
    double log_p = 0;
    run_scrambling(spec, state, nullptr, none, faults);
    for (uint32_t step = 0; step < spec.depth; step++) {
        apply_layer(state, spec.brick_layers[step], nullptr, none, faults);
        sample_sweep(spec, step, state, rng, out.record, log_p);
        out.sweep_charge_variance.push_back(state.charge_variance());
    }
    if (timing == EntropyTiming::AfterTerminalSweep) {
        state.collapse_to(state.sample_configuration(rng));
    }
    double total = state.norm_squared();
    out.reference_entropy = binary_entropy(state.sector_weight(q0) / total);
    return out;
}

}  // namespace chargelearn
