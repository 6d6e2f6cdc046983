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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "chargelearn/circuit_io.h"

using namespace chargelearn;

TEST(circuit, theta_follows_sine_measure) {
    Rng rng = make_rng(11, SeedDomain::Circuit);
    const int n = 100000;
    std::vector<double> thetas;
    double sum_cos = 0;
    for (int k = 0; k < n; k++) {
        GateParams g = sample_gate_params(rng);
        ASSERT_TRUE(g.in_range());
        thetas.push_back(g.theta);
        sum_cos += std::cos(g.theta);
    }
    std::sort(thetas.begin(), thetas.end());
    double ks = 0;
    for (int k = 0; k < n; k++) {
        double cdf = (1 - std::cos(thetas[k])) / 2;
        ks = std::max({ks, std::abs(cdf - static_cast<double>(k) / n), std::abs(cdf - static_cast<double>(k + 1) / n)});
    }
    EXPECT_LT(ks, 0.01);
    EXPECT_NEAR(sum_cos / n, 0.0, 0.01);
}

TEST(circuit, sampling_is_deterministic_per_seed) {
    Rng a = make_rng(5, SeedDomain::Circuit);
    Rng b = make_rng(5, SeedDomain::Circuit);
    for (int k = 0; k < 10; k++) {
        EXPECT_EQ(sample_gate_params(a), sample_gate_params(b));
    }
}

TEST(circuit, gate_matrix_identity) {
    GateMatrix u = gate_matrix(GateParams{});
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            EXPECT_EQ(u[r][c], Amplitude(r == c ? 1.0 : 0.0));
        }
    }
}

TEST(circuit, gate_matrix_full_swap) {
    GateParams g;
    g.theta = std::numbers::pi / 2;
    GateMatrix u = gate_matrix(g);
    // Column |01> maps entirely onto |10>.
    EXPECT_NEAR(std::abs(u[2][1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(u[1][1]), 0.0, 1e-15);
    EXPECT_NEAR(u[2][1].real(), -1.0, 1e-15);
}

TEST(circuit, gate_matrix_unitary_and_charge_conserving) {
    Rng rng = make_rng(3, SeedDomain::Circuit);
    const int charge[4] = {0, 1, 1, 2};
    for (int trial = 0; trial < 200; trial++) {
        GateMatrix u = gate_matrix(sample_gate_params(rng));
        for (int r = 0; r < 4; r++) {
            for (int c = 0; c < 4; c++) {
                if (charge[r] != charge[c]) {
                    EXPECT_EQ(u[r][c], Amplitude(0.0));
                }
                Amplitude dot = 0;
                for (int k = 0; k < 4; k++) {
                    dot += std::conj(u[k][r]) * u[k][c];
                }
                EXPECT_NEAR(std::abs(dot - Amplitude(r == c ? 1.0 : 0.0)), 0.0, 1e-12);
            }
        }
    }
}

TEST(circuit, build_is_deterministic) {
    auto a = build_circuit(6, 3, MeasurementPlan::weak_all(0.4), 7);
    auto b = build_circuit(6, 3, MeasurementPlan::weak_all(0.4), 7);
    EXPECT_EQ(a, b);
    EXPECT_EQ(serialize_circuit(a), serialize_circuit(b));
    auto c = build_circuit(6, 3, MeasurementPlan::weak_all(0.4), 8);
    EXPECT_NE(a, c);
}

TEST(circuit, gates_do_not_depend_on_plan) {
    auto a = build_circuit(8, 4, MeasurementPlan::weak_all(0.1), 21);
    auto b = build_circuit(8, 4, MeasurementPlan::projective_fraction(0.3), 21);
    EXPECT_EQ(a.scramble_layers, b.scramble_layers);
    EXPECT_EQ(a.brick_layers, b.brick_layers);
}

TEST(circuit, scramble_layers_are_perfect_matchings) {
    auto spec = build_circuit(6, 3, MeasurementPlan::weak_all(0.5), 7);
    ASSERT_EQ(spec.scramble_layers.size(), 5u);
    for (const auto &layer : spec.scramble_layers) {
        EXPECT_EQ(layer.size(), 3u);
        std::set<uint32_t> seen;
        for (const auto &g : layer) {
            seen.insert(g.sites.first);
            seen.insert(g.sites.second);
        }
        EXPECT_EQ(seen.size(), 6u);
    }
    EXPECT_EQ(build_circuit(6, 3, MeasurementPlan::weak_all(0.5), 7, 2).scramble_layers.size(), 2u);
}

TEST(circuit, brickwork_bonds) {
    auto spec = build_circuit(14, 7, MeasurementPlan::weak_all(0.5), 1);
    ASSERT_EQ(spec.brick_layers.size(), 7u);
    for (uint32_t k = 0; k < 7; k++) {
        const auto &layer = spec.brick_layers[k];
        EXPECT_EQ(layer.size(), k % 2 == 0 ? 7u : 6u);
        for (size_t g = 0; g < layer.size(); g++) {
            EXPECT_EQ(layer[g].sites.first, 2 * g + k % 2);
            EXPECT_EQ(layer[g].sites.second, 2 * g + k % 2 + 1);
        }
    }
    EXPECT_EQ(spec.brick_layers[0].front().sites, (SitePair{0, 1}));
    EXPECT_EQ(spec.brick_layers[0].back().sites, (SitePair{12, 13}));
    EXPECT_EQ(spec.brick_layers[1].front().sites, (SitePair{1, 2}));
    EXPECT_EQ(spec.brick_layers[1].back().sites, (SitePair{11, 12}));
}

TEST(circuit, rejects_odd_size) {
    EXPECT_THROW(build_circuit(5, 2, MeasurementPlan::weak_all(0.5), 1), std::invalid_argument);
    EXPECT_THROW(build_circuit(6, 0, MeasurementPlan::weak_all(0.5), 1), std::invalid_argument);
}

TEST(circuit, plan_accessors) {
    auto weak = MeasurementPlan::weak_all(0.25);
    EXPECT_EQ(weak.gamma(), 0.25);
    EXPECT_EQ(weak.measurement_strength(), 0.25);
    EXPECT_THROW(weak.p(), std::logic_error);
    auto proj = MeasurementPlan::projective_fraction(0.3);
    EXPECT_EQ(proj.p(), 0.3);
    EXPECT_EQ(proj.measurement_strength(), 1.0);
    EXPECT_THROW(proj.gamma(), std::logic_error);
    EXPECT_THROW(MeasurementPlan::weak_all(1.5), std::invalid_argument);
}

TEST(circuit, validate_catches_broken_structure) {
    auto spec = build_circuit(6, 3, MeasurementPlan::weak_all(0.5), 2);
    EXPECT_NO_THROW(spec.validate());

    auto overlapping = spec;
    overlapping.scramble_layers[0][1].sites = overlapping.scramble_layers[0][0].sites;
    EXPECT_THROW(overlapping.validate(), std::invalid_argument);

    auto wrong_parity = spec;
    wrong_parity.brick_layers[1][0].sites = {0, 1};
    EXPECT_THROW(wrong_parity.validate(), std::invalid_argument);

    auto bad_charge = spec;
    bad_charge.candidate_charges = {3, 1};
    EXPECT_THROW(bad_charge.validate(), std::invalid_argument);
}

TEST(circuit, entanglement_volume) {
    EXPECT_DOUBLE_EQ(entanglement_volume({4, 2, 1}), 4);
    EXPECT_DOUBLE_EQ(entanglement_volume({14, 7, 1}), 49);
    EXPECT_NEAR(entanglement_volume({70, 3, 2}), 27, 1e-12);
    EXPECT_THROW(entanglement_volume({0, 3, 1}), std::invalid_argument);
}
