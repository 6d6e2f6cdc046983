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

#ifndef CHARGELEARN_RECORD_H
#define CHARGELEARN_RECORD_H

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chargelearn/circuit.h"

namespace chargelearn {

inline constexpr double kNegativeInfinity = -std::numeric_limits<double>::infinity();

/// Forced outcomes with Born probability below this count as impossible.
inline constexpr double kZeroProbability = 1e-300;

struct Outcome {
    uint32_t step = 0;
    uint32_t site = 0;
    uint8_t bit = 0;

    bool operator==(const Outcome &other) const = default;
};

/// Time-ordered mid-circuit outcomes of one trajectory. The terminal readout of every qubit is
/// kept apart: decoders never see it.
struct MeasurementRecord {
    std::vector<Outcome> outcomes;
    std::optional<std::vector<uint8_t>> final_occupations;

    bool operator==(const MeasurementRecord &other) const = default;
};

/// Throws std::invalid_argument unless the record's (step, site) sequence is consistent with the
/// circuit's schedule: every slot in order for weak-all plans, an increasing subset of slots for
/// projective-fraction plans.
void check_schedule(const CircuitSpec &spec, const MeasurementRecord &record);

/// Probabilities over spec.candidate_charges, in the same order. All zeros means heralded.
struct Posterior {
    std::vector<double> probabilities;

    bool heralded() const;
    bool operator==(const Posterior &other) const = default;
};

/// Normalizes per-candidate log-likelihoods under equal priors (max-log subtraction).
/// Every entry at -infinity yields the all-zero heralded posterior.
Posterior posterior_from_log_likelihoods(std::span<const double> log_likelihoods);

/// True iff no candidate has a finite log-likelihood. Decoders report -infinity for any
/// likelihood they found below kZeroProbability.
bool herald_error(std::span<const double> log_likelihoods);

/// Index of the predicted candidate: the maximal probability, exact ties broken toward the lower
/// charge. Empty for heralded posteriors.
std::optional<size_t> predicted_index(const Posterior &posterior, std::span<const int> charges);

enum class DecoderKind { PostBqp, Sep };

const char *decoder_name(DecoderKind kind);
DecoderKind parse_decoder(std::string_view name);

/// One decoder's verdict on one trajectory.
struct DecodedCharge {
    std::vector<double> log_likelihoods;
    Posterior posterior;
    /// Posterior mass on the true charge.
    double credence = 0;
    /// Whether the prediction equals the true charge; false for heralded posteriors.
    bool accurate = false;
    bool heralded = false;
};

DecodedCharge assess(std::vector<double> log_likelihoods, std::span<const int> charges, int true_charge);

struct TrajectoryResult {
    uint64_t shot = 0;
    uint64_t seed = 0;
    int true_charge = 0;
    MeasurementRecord record;
    int final_measured_charge = 0;
    /// Sum of log Born probabilities of every sampled mid-circuit outcome.
    double sampling_log_probability = 0;
    /// Number of injected charge-violating faults (0 for noiseless runs).
    uint32_t injected_faults = 0;
    std::optional<DecodedCharge> postbqp;
    std::optional<DecodedCharge> sep;

    const std::optional<DecodedCharge> &decoded(DecoderKind kind) const {
        return kind == DecoderKind::PostBqp ? postbqp : sep;
    }
    std::optional<DecodedCharge> &decoded(DecoderKind kind) {
        return kind == DecoderKind::PostBqp ? postbqp : sep;
    }
    /// True when the stat-mech decoder assigned zero likelihood to every candidate.
    bool heralded_error() const {
        return sep.has_value() && sep->heralded;
    }
};

}  // namespace chargelearn

#endif
