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

#include "chargelearn/sep_decoder.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chargelearn/simulator.h"

namespace chargelearn {

ClassicalDistribution::ClassicalDistribution(std::shared_ptr<const BasisTable> basis, int q)
    : basis_(std::move(basis)), charge_(q), weights_(basis_->sector_size(q), 0.0) {
}

ClassicalDistribution ClassicalDistribution::initial(uint32_t num_qubits, int q) {
    Config c = initial_configuration(num_qubits, q);
    ClassicalDistribution d(BasisTable::for_size(num_qubits), q);
    d.weights_[d.basis_->index_of(c)] = 1.0;
    return d;
}

double ClassicalDistribution::weight(Config c) const {
    if (std::popcount(c) != charge_) {
        return 0;
    }
    return weights_[basis_->index_of(c)];
}

double ClassicalDistribution::total_mass() const {
    double total = 0;
    for (double w : weights_) {
        total += w;
    }
    return total;
}

void ClassicalDistribution::check_site(uint32_t site) const {
    if (site >= num_qubits()) {
        throw std::out_of_range("site " + std::to_string(site) + " out of range for L=" + std::to_string(num_qubits()));
    }
}

void ClassicalDistribution::apply_gate_transfer(double theta, SitePair sites) {
    const uint32_t i = sites.first;
    const uint32_t j = sites.second;
    check_site(i);
    check_site(j);
    if (i == j) {
        throw std::invalid_argument("apply_gate_transfer: sites must differ");
    }
    const double s = std::sin(theta);
    const double hop = s * s;
    const double stay = 1 - hop;
    const Config flip = (Config{1} << i) | (Config{1} << j);
    auto configs = basis_->sector(charge_);
    for (size_t k = 0; k < configs.size(); k++) {
        Config c = configs[k];
        if (!occupied(c, i) && occupied(c, j)) {
            size_t k2 = basis_->index_of(c ^ flip);
            double a = weights_[k];
            double b = weights_[k2];
            weights_[k] = stay * a + hop * b;
            weights_[k2] = hop * a + stay * b;
        }
    }
}

void ClassicalDistribution::apply_measurement_update(uint32_t site, uint8_t outcome, double gamma) {
    check_site(site);
    if (outcome > 1) {
        throw std::invalid_argument("outcome must be 0 or 1");
    }
    KrausAmplitudes k = kraus_amplitudes(gamma);
    const double on_empty = outcome ? 0.0 : 1.0;
    const double on_occupied = outcome ? k.sin_half * k.sin_half : k.cos_half * k.cos_half;
    if (log_likelihood_ == kNegativeInfinity) {
        return;
    }
    auto configs = basis_->sector(charge_);
    double before = 0;
    double after = 0;
    for (size_t idx = 0; idx < configs.size(); idx++) {
        before += weights_[idx];
        weights_[idx] *= occupied(configs[idx], site) ? on_occupied : on_empty;
        after += weights_[idx];
    }
    // Summed in the same order, so an all-ones update gives a ratio of exactly 1.
    double ratio = after / before;
    if (!(ratio >= kZeroProbability)) {
        log_likelihood_ = kNegativeInfinity;
        std::fill(weights_.begin(), weights_.end(), 0.0);
        return;
    }
    log_likelihood_ += std::log(ratio);
    for (double &w : weights_) {
        w /= after;
    }
}

std::vector<double> sep_log_likelihoods(const CircuitSpec &spec, const MeasurementRecord &record) {
    check_schedule(spec, record);
    const double strength = spec.plan.measurement_strength();
    std::vector<double> out;
    for (int q : spec.candidate_charges) {
        auto dist = ClassicalDistribution::initial(spec.num_qubits, q);
        for (const auto &layer : spec.scramble_layers) {
            for (const auto &gate : layer) {
                dist.apply_gate_transfer(gate.params.theta, gate.sites);
            }
        }
        size_t next = 0;
        const auto &outs = record.outcomes;
        for (uint32_t step = 0; step < spec.depth; step++) {
            for (const auto &gate : spec.brick_layers[step]) {
                dist.apply_gate_transfer(gate.params.theta, gate.sites);
            }
            for (; next < outs.size() && outs[next].step == step; next++) {
                dist.apply_measurement_update(outs[next].site, outs[next].bit, strength);
            }
        }
        out.push_back(dist.log_likelihood());
    }
    return out;
}

Posterior sep_posterior(const CircuitSpec &spec, const MeasurementRecord &record) {
    return posterior_from_log_likelihoods(sep_log_likelihoods(spec, record));
}

DecodedCharge decode_sep(const CircuitSpec &spec, const MeasurementRecord &record, int true_charge) {
    return assess(sep_log_likelihoods(spec, record), spec.candidate_charges, true_charge);
}

}  // namespace chargelearn
