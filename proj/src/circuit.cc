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

#include "chargelearn/circuit.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace chargelearn {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

Amplitude phase(double angle) {
    return std::polar(1.0, angle);
}

void check_unit_interval(double value, const char *what) {
    if (!(value >= 0 && value <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

}  // namespace

bool GateParams::in_range() const {
    auto phase_ok = [](double a) {
        return a >= 0 && a < kTwoPi;
    };
    return theta >= 0 && theta < std::numbers::pi && phase_ok(phi0) && phase_ok(phi1) && phase_ok(phi2) &&
           phase_ok(phi3);
}

GateParams sample_gate_params(Rng &rng) {
    GateParams g;
    // 1 - 2u lies in (-1, 1], so theta lies in [0, pi).
    g.theta = std::acos(1 - 2 * uniform01(rng));
    g.phi0 = kTwoPi * uniform01(rng);
    g.phi1 = kTwoPi * uniform01(rng);
    g.phi2 = kTwoPi * uniform01(rng);
    g.phi3 = kTwoPi * uniform01(rng);
    return g;
}

GateMatrix gate_matrix(const GateParams &g) {
    GateMatrix u{};
    double c = std::cos(g.theta);
    double s = std::sin(g.theta);
    u[0][0] = phase(g.phi0);
    u[1][1] = phase(g.phi1 + g.phi2) * c;
    u[1][2] = phase(g.phi1 - g.phi2) * s;
    u[2][1] = -phase(g.phi2 - g.phi1) * s;
    u[2][2] = phase(-(g.phi1 + g.phi2)) * c;
    u[3][3] = phase(g.phi3);
    return u;
}

std::string_view measurement_kind_name(MeasurementKind kind) {
    switch (kind) {
        case MeasurementKind::WeakAll:
            return "weak-all";
        case MeasurementKind::ProjectiveFraction:
            return "projective-fraction";
    }
    throw std::logic_error("unreachable measurement kind");
}

MeasurementKind parse_measurement_kind(std::string_view name) {
    if (name == "weak-all") {
        return MeasurementKind::WeakAll;
    }
    if (name == "projective-fraction") {
        return MeasurementKind::ProjectiveFraction;
    }
    throw std::invalid_argument("unknown measurement kind '" + std::string(name) + "'");
}

MeasurementPlan MeasurementPlan::weak_all(double gamma) {
    check_unit_interval(gamma, "gamma");
    return MeasurementPlan(MeasurementKind::WeakAll, gamma);
}

MeasurementPlan MeasurementPlan::projective_fraction(double p) {
    check_unit_interval(p, "p");
    return MeasurementPlan(MeasurementKind::ProjectiveFraction, p);
}

double MeasurementPlan::gamma() const {
    if (kind_ != MeasurementKind::WeakAll) {
        throw std::logic_error("gamma is only defined for weak-all plans");
    }
    return value_;
}

double MeasurementPlan::p() const {
    if (kind_ != MeasurementKind::ProjectiveFraction) {
        throw std::logic_error("p is only defined for projective-fraction plans");
    }
    return value_;
}

double MeasurementPlan::measurement_strength() const {
    return kind_ == MeasurementKind::WeakAll ? value_ : 1.0;
}

bool CircuitSpec::is_candidate(int q) const {
    return std::find(candidate_charges.begin(), candidate_charges.end(), q) != candidate_charges.end();
}

std::vector<SitePair> brick_bonds(uint32_t num_qubits, uint32_t layer) {
    std::vector<SitePair> bonds;
    for (uint32_t i = layer % 2; i + 1 < num_qubits; i += 2) {
        bonds.push_back({i, i + 1});
    }
    return bonds;
}

void CircuitSpec::validate() const {
    const uint32_t n = num_qubits;
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("num_qubits must be even and at least 2, got " + std::to_string(n));
    }
    if (n > 30) {
        throw std::invalid_argument("num_qubits above 30 is not supported");
    }
    if (depth < 1) {
        throw std::invalid_argument("depth must be at least 1");
    }
    if (brick_layers.size() != depth) {
        throw std::invalid_argument(
            "expected " + std::to_string(depth) + " brick layers, found " + std::to_string(brick_layers.size()));
    }
    check_unit_interval(plan.parameter(), "measurement plan parameter");

    auto check_gate = [&](const PlacedGate &gate, const std::string &where) {
        if (gate.sites.first >= n || gate.sites.second >= n || gate.sites.first == gate.sites.second) {
            throw std::invalid_argument(where + ": invalid site pair");
        }
        if (!gate.params.in_range()) {
            throw std::invalid_argument(where + ": gate angles out of range");
        }
    };

    for (size_t k = 0; k < scramble_layers.size(); k++) {
        std::vector<bool> used(n, false);
        for (size_t g = 0; g < scramble_layers[k].size(); g++) {
            const auto &gate = scramble_layers[k][g];
            std::string where = "scramble layer " + std::to_string(k) + " gate " + std::to_string(g);
            check_gate(gate, where);
            if (used[gate.sites.first] || used[gate.sites.second]) {
                throw std::invalid_argument(where + ": site paired twice in one layer");
            }
            used[gate.sites.first] = used[gate.sites.second] = true;
        }
    }

    for (uint32_t k = 0; k < depth; k++) {
        auto expected = brick_bonds(n, k);
        const auto &layer = brick_layers[k];
        if (layer.size() != expected.size()) {
            throw std::invalid_argument("brick layer " + std::to_string(k) + " has the wrong number of bonds");
        }
        for (size_t g = 0; g < layer.size(); g++) {
            std::string where = "brick layer " + std::to_string(k) + " gate " + std::to_string(g);
            check_gate(layer[g], where);
            if (!(layer[g].sites == expected[g])) {
                throw std::invalid_argument(where + ": bond does not follow the brickwork pattern");
            }
        }
    }

    if (candidate_charges.empty()) {
        throw std::invalid_argument("candidate_charges must not be empty");
    }
    for (size_t i = 0; i < candidate_charges.size(); i++) {
        int q = candidate_charges[i];
        if (q != static_cast<int>(n / 2) && q != static_cast<int>(n / 2) - 1) {
            throw std::invalid_argument("candidate charge " + std::to_string(q) + " has no prepared initial state");
        }
        for (size_t j = 0; j < i; j++) {
            if (candidate_charges[j] == q) {
                throw std::invalid_argument("duplicate candidate charge " + std::to_string(q));
            }
        }
    }
}

CircuitSpec build_circuit(
    uint32_t num_qubits, uint32_t depth, MeasurementPlan plan, uint64_t seed, uint32_t scramble_layers) {
    if (num_qubits % 2 != 0) {
        throw std::invalid_argument("build_circuit: num_qubits must be even, got " + std::to_string(num_qubits));
    }
    if (num_qubits < 2 || num_qubits > 30) {
        throw std::invalid_argument("build_circuit: num_qubits must lie in [2, 30]");
    }
    if (depth < 1) {
        throw std::invalid_argument("build_circuit: depth must be at least 1");
    }

    CircuitSpec spec;
    spec.num_qubits = num_qubits;
    spec.depth = depth;
    spec.plan = plan;
    spec.seed = seed;
    spec.candidate_charges = {static_cast<int>(num_qubits / 2), static_cast<int>(num_qubits / 2) - 1};

    Rng rng = make_rng(seed, SeedDomain::Circuit, {num_qubits, depth, scramble_layers});

    std::vector<uint32_t> order(num_qubits);
    for (uint32_t k = 0; k < scramble_layers; k++) {
        std::iota(order.begin(), order.end(), 0u);
        shuffle_range(order.begin(), order.end(), rng);
        GateLayer layer;
        for (uint32_t i = 0; i < num_qubits; i += 2) {
            SitePair sites{std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])};
            layer.push_back({sites, sample_gate_params(rng)});
        }
        std::sort(layer.begin(), layer.end(), [](const PlacedGate &a, const PlacedGate &b) {
            return a.sites.first < b.sites.first;
        });
        spec.scramble_layers.push_back(std::move(layer));
    }

    for (uint32_t k = 0; k < depth; k++) {
        GateLayer layer;
        for (const auto &bond : brick_bonds(num_qubits, k)) {
            layer.push_back({bond, sample_gate_params(rng)});
        }
        spec.brick_layers.push_back(std::move(layer));
    }
    return spec;
}

double entanglement_volume(const EntanglementVolumeInput &in) {
    if (!(in.num_qubits > 0) || !(in.depth > 0) || in.dimension == 0) {
        throw std::invalid_argument("entanglement_volume: inputs must be positive");
    }
    double d = static_cast<double>(in.dimension);
    double linear = std::min(std::pow(in.num_qubits, 1.0 / d), in.depth);
    return std::pow(linear, d + 1);
}

}  // namespace chargelearn
