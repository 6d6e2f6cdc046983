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

#ifndef CHARGELEARN_CIRCUIT_H
#define CHARGELEARN_CIRCUIT_H

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "chargelearn/rng.h"

namespace chargelearn {

/// Angles of one U(1)-symmetric two-qubit gate.
///
/// In the basis (|00>, |01>, |10>, |11>) the gate is
///
///     e^{i phi0}
///                 e^{i(phi1+phi2)} cos(theta)    e^{i(phi1-phi2)} sin(theta)
///                -e^{i(phi2-phi1)} sin(theta)    e^{-i(phi1+phi2)} cos(theta)
///                                                                              e^{i phi3}
///
/// theta lies in [0, pi) and every phase in [0, 2 pi).
struct GateParams {
    double theta = 0;
    double phi0 = 0;
    double phi1 = 0;
    double phi2 = 0;
    double phi3 = 0;

    bool operator==(const GateParams &other) const = default;
    bool in_range() const;
};

using Amplitude = std::complex<double>;
using GateMatrix = std::array<std::array<Amplitude, 4>, 4>;

/// theta has density proportional to sin(theta) (drawn as arccos(1 - 2u)); the phases are uniform.
/// Consumes exactly five uniform01 draws.
GateParams sample_gate_params(Rng &rng);

/// Dense 4x4 matrix, basis order |q_first q_second> = |00>, |01>, |10>, |11>.
/// Entries coupling different two-site charges are exactly zero.
GateMatrix gate_matrix(const GateParams &g);

struct SitePair {
    uint32_t first = 0;
    uint32_t second = 0;

    bool operator==(const SitePair &other) const = default;
};

struct PlacedGate {
    SitePair sites;
    GateParams params;

    bool operator==(const PlacedGate &other) const = default;
};

using GateLayer = std::vector<PlacedGate>;

enum class MeasurementKind {
    /// Every qubit is weakly measured (strength gamma) after every brick layer.
    WeakAll,
    /// Each qubit is projectively measured with probability p after every brick layer.
    ProjectiveFraction,
};

std::string_view measurement_kind_name(MeasurementKind kind);
MeasurementKind parse_measurement_kind(std::string_view name);

class MeasurementPlan {
   public:
    static MeasurementPlan weak_all(double gamma);
    static MeasurementPlan projective_fraction(double p);

    MeasurementKind kind() const {
        return kind_;
    }
    /// Strength of the weak measurements. Throws unless kind() == WeakAll.
    double gamma() const;
    /// Per-qubit measurement probability. Throws unless kind() == ProjectiveFraction.
    double p() const;
    /// gamma or p, whichever this plan carries.
    double parameter() const {
        return value_;
    }
    /// Strength each performed measurement has (gamma for weak plans, 1 for projective ones).
    double measurement_strength() const;

    bool operator==(const MeasurementPlan &other) const = default;

   private:
    MeasurementPlan(MeasurementKind kind, double value) : kind_(kind), value_(value) {
    }
    MeasurementKind kind_ = MeasurementKind::WeakAll;
    double value_ = 0;
};

/// Immutable description of one monitored experiment.
struct CircuitSpec {
    uint32_t num_qubits = 0;
    uint32_t depth = 0;
    /// Perfect matchings applied before the monitored dynamics starts; no measurements.
    std::vector<GateLayer> scramble_layers;
    /// Brick layer k acts on bonds (i, i+1) with i = k mod 2; a measurement sweep follows each.
    std::vector<GateLayer> brick_layers;
    MeasurementPlan plan = MeasurementPlan::weak_all(0);
    uint64_t seed = 0;
    std::vector<int> candidate_charges;

    bool operator==(const CircuitSpec &other) const = default;

    /// Number of (step, site) measurement slots in the monitored stage.
    size_t num_slots() const {
        return static_cast<size_t>(depth) * num_qubits;
    }
    bool is_candidate(int q) const;

    /// Throws std::invalid_argument describing the first violated structural invariant.
    void validate() const;
};

/// Builds a circuit whose gates are a pure function of (num_qubits, depth, seed, scramble_layers).
/// The measurement plan is stored but does not consume randomness, so circuits built with
/// different plans and the same seed share every gate.
CircuitSpec build_circuit(
    uint32_t num_qubits, uint32_t depth, MeasurementPlan plan, uint64_t seed, uint32_t scramble_layers = 5);

/// Nearest-neighbour bonds of brick layer `layer` with open boundaries.
std::vector<SitePair> brick_bonds(uint32_t num_qubits, uint32_t layer);

struct EntanglementVolumeInput {
    double num_qubits = 0;
    double depth = 0;
    uint32_t dimension = 1;
};

/// min(N^{1/d}, t)^{d+1}.
double entanglement_volume(const EntanglementVolumeInput &in);

}  // namespace chargelearn

#endif
