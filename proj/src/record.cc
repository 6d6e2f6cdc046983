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

#include "chargelearn/record.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chargelearn {

void check_schedule(const CircuitSpec &spec, const MeasurementRecord &record) {
    const auto &outs = record.outcomes;
    const uint32_t n = spec.num_qubits;
    auto slot_of = [n](const Outcome &o) {
        return static_cast<size_t>(o.step) * n + o.site;
    };
    for (size_t k = 0; k < outs.size(); k++) {
        const auto &o = outs[k];
        if (o.bit > 1) {
            throw std::invalid_argument("record entry " + std::to_string(k) + ": outcome bit must be 0 or 1");
        }
        if (o.site >= n || o.step >= spec.depth) {
            throw std::invalid_argument("record entry " + std::to_string(k) + ": (step, site) outside the schedule");
        }
    }
    if (spec.plan.kind() == MeasurementKind::WeakAll) {
        if (outs.size() != spec.num_slots()) {
            throw std::invalid_argument(
                "record has " + std::to_string(outs.size()) + " outcomes, schedule has " +
                std::to_string(spec.num_slots()) + " slots");
        }
        for (size_t k = 0; k < outs.size(); k++) {
            if (slot_of(outs[k]) != k) {
                throw std::invalid_argument("record entry " + std::to_string(k) + " is out of schedule order");
            }
        }
    } else {
        for (size_t k = 1; k < outs.size(); k++) {
            if (slot_of(outs[k]) <= slot_of(outs[k - 1])) {
                throw std::invalid_argument("record entry " + std::to_string(k) + " is out of schedule order");
            }
        }
    }
    if (record.final_occupations.has_value() && record.final_occupations->size() != n) {
        throw std::invalid_argument("final occupations must list every qubit");
    }
}

bool Posterior::heralded() const {
    for (double p : probabilities) {
        if (p != 0) {
            return false;
        }
    }
    return true;
}

Posterior posterior_from_log_likelihoods(std::span<const double> log_likelihoods) {
    Posterior out;
    out.probabilities.assign(log_likelihoods.size(), 0.0);
    double best = kNegativeInfinity;
    for (double v : log_likelihoods) {
        if (v > best) {
            best = v;
        }
    }
    if (best == kNegativeInfinity) {
        return out;
    }
    double total = 0;
    for (size_t k = 0; k < log_likelihoods.size(); k++) {
        double v = log_likelihoods[k];
        out.probabilities[k] = v == kNegativeInfinity ? 0.0 : std::exp(v - best);
        total += out.probabilities[k];
    }
    for (double &p : out.probabilities) {
        p /= total;
    }
    return out;
}

bool herald_error(std::span<const double> log_likelihoods) {
    for (double v : log_likelihoods) {
        if (v > kNegativeInfinity) {
            return false;
        }
    }
    return true;
}

std::optional<size_t> predicted_index(const Posterior &posterior, std::span<const int> charges) {
    if (posterior.heralded()) {
        return std::nullopt;
    }
    if (charges.size() != posterior.probabilities.size()) {
        throw std::invalid_argument("posterior and candidate charges differ in length");
    }
    size_t best = 0;
    for (size_t k = 1; k < charges.size(); k++) {
        double pk = posterior.probabilities[k];
        double pb = posterior.probabilities[best];
        if (pk > pb || (pk == pb && charges[k] < charges[best])) {
            best = k;
        }
    }
    return best;
}

const char *decoder_name(DecoderKind kind) {
    return kind == DecoderKind::PostBqp ? "postbqp" : "sep";
}

DecoderKind parse_decoder(std::string_view name) {
    if (name == "postbqp") {
        return DecoderKind::PostBqp;
    }
    if (name == "sep") {
        return DecoderKind::Sep;
    }
    throw std::invalid_argument("unknown decoder '" + std::string(name) + "' (expected postbqp or sep)");
}

DecodedCharge assess(std::vector<double> log_likelihoods, std::span<const int> charges, int true_charge) {
    if (log_likelihoods.size() != charges.size()) {
        throw std::invalid_argument("one log-likelihood per candidate charge is required");
    }
    DecodedCharge out;
    out.posterior = posterior_from_log_likelihoods(log_likelihoods);
    out.log_likelihoods = std::move(log_likelihoods);
    out.heralded = herald_error(out.log_likelihoods);
    for (size_t k = 0; k < charges.size(); k++) {
        if (charges[k] == true_charge) {
            out.credence = out.posterior.probabilities[k];
        }
    }
    auto predicted = predicted_index(out.posterior, charges);
    out.accurate = predicted.has_value() && charges[*predicted] == true_charge;
    return out;
}

}  // namespace chargelearn
