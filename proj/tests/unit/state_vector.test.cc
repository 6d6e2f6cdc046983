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

#include "chargelearn/state_vector.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "chargelearn/simulator.h"
#include "unit/oracles.h"

using namespace chargelearn;

TEST(basis_table, sectors_partition_the_register) {
    BasisTable b(6);
    size_t total = 0;
    const size_t binom[] = {1, 6, 15, 20, 15, 6, 1};
    for (int q = 0; q <= 6; q++) {
        EXPECT_EQ(b.sector_size(q), binom[q]);
        auto sec = b.sector(q);
        for (size_t k = 0; k < sec.size(); k++) {
            EXPECT_EQ(std::popcount(sec[k]), q);
            EXPECT_EQ(b.index_of(sec[k]), k);
        }
        total += sec.size();
    }
    EXPECT_EQ(total, 64u);
    EXPECT_EQ(BasisTable(14).sector_size(7), 3432u);
}

TEST(state_vector, initial_states) {
    // Bit i of a configuration is site i, so "0101" is 0b1010.
    EXPECT_EQ(initial_configuration(4, 2), 0b1010u);
    EXPECT_EQ(initial_configuration(4, 1), 0b0010u);
    EXPECT_THROW(initial_configuration(4, 0), std::invalid_argument);
    EXPECT_THROW(prepare_initial_state(4, 3), std::invalid_argument);

    for (int q : {2, 1}) {
        auto s = prepare_initial_state(4, q);
        EXPECT_EQ(s.sectors(), std::vector<int>{q});
        EXPECT_EQ(s.amplitude(initial_configuration(4, q)), Amplitude(1.0));
        EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
    }
}

TEST(state_vector, identity_gate_is_noop) {
    Rng rng = make_rng(1, SeedDomain::Trajectory);
    auto s = prepare_initial_state(6, 3);
    for (int k = 0; k < 10; k++) {
        s.apply_gate(sample_gate_params(rng), {static_cast<uint32_t>(k % 5), 5});
    }
    auto before = s;
    s.apply_gate(GateParams{}, {1, 4});
    for (int q : before.sectors()) {
        auto a = before.block(q), b = s.block(q);
        for (size_t k = 0; k < a.size(); k++) {
            EXPECT_EQ(a[k], b[k]);
        }
    }
}

TEST(state_vector, gates_preserve_norm_and_sector) {
    Rng rng = make_rng(2, SeedDomain::Trajectory);
    auto s = prepare_initial_state(8, 3);
    for (int k = 0; k < 200; k++) {
        uint32_t i = static_cast<uint32_t>(uniform_index(rng, 8));
        uint32_t j = static_cast<uint32_t>(uniform_index(rng, 7));
        if (j >= i) {
            j++;
        }
        s.apply_gate(sample_gate_params(rng), {i, j});
        ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12);
    }
    EXPECT_EQ(s.sectors(), std::vector<int>{3});
    EXPECT_EQ(s.charge_variance(), 0.0);
}

TEST(state_vector, hopping_amplitude_matches_matrix_entry) {
    GateParams g;
    g.theta = 0.7;
    g.phi0 = 1.1;
    g.phi3 = 2.3;
    // |01>: site 0 empty, site 1 occupied.
    auto s = StateVector::basis_state(2, 0b10);
    s.apply_gate(g, {0, 1});
    EXPECT_NEAR(std::norm(s.amplitude(0b01)), std::sin(0.7) * std::sin(0.7), 1e-15);
    EXPECT_NEAR(std::norm(s.amplitude(0b10)), std::cos(0.7) * std::cos(0.7), 1e-15);
}

TEST(state_vector, matches_dense_simulation) {
    Rng rng = make_rng(3, SeedDomain::Trajectory);
    const uint32_t n = 6;
    auto s = prepare_initial_state(n, 2);
    oracle::DenseState dense(n, initial_configuration(n, 2));
    for (int k = 0; k < 40; k++) {
        uint32_t i = static_cast<uint32_t>(uniform_index(rng, n));
        uint32_t j = static_cast<uint32_t>(uniform_index(rng, n - 1));
        if (j >= i) {
            j++;
        }
        GateParams g = sample_gate_params(rng);
        s.apply_gate(g, {i, j});
        dense.gate(g, {i, j});
    }
    for (uint32_t c = 0; c < (1u << n); c++) {
        EXPECT_NEAR(std::abs(s.amplitude(c) - dense.amp[c]), 0.0, 1e-12);
    }
}

TEST(state_vector, x_flip_moves_between_sectors) {
    auto s = prepare_initial_state(4, 2);
    GateParams g;
    g.theta = 0.9;
    s.apply_gate(g, {1, 2});
    s.apply_x(0);
    EXPECT_EQ(s.sectors(), std::vector<int>{3});
    s.apply_x(1);
    // Site 1 is occupied in some branches and empty in others.
    EXPECT_EQ(s.sectors(), (std::vector<int>{2, 4}));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(state_vector, charge_variance_of_sector_superposition) {
    const double a = 1 / std::numbers::sqrt2;
    std::pair<Config, Amplitude> terms[] = {{initial_configuration(6, 3), a}, {initial_configuration(6, 2), a}};
    StateVector s(BasisTable::for_size(6), terms);
    EXPECT_NEAR(s.charge_variance(), 0.25, 1e-15);
    EXPECT_EQ(prepare_initial_state(6, 3).charge_variance(), 0.0);
}

TEST(state_vector, zero_state_cannot_be_normalized) {
    auto s = prepare_initial_state(2, 1);
    s.apply_diagonal(1, 1.0, 0.0);
    EXPECT_THROW(s.normalize(), std::domain_error);
    Rng rng(1);
    EXPECT_THROW(s.sample_configuration(rng), std::domain_error);
}

TEST(state_vector, site_range_checked) {
    auto s = prepare_initial_state(4, 2);
    EXPECT_THROW(s.apply_gate(GateParams{}, {0, 4}), std::out_of_range);
    EXPECT_THROW(s.apply_gate(GateParams{}, {2, 2}), std::invalid_argument);
    EXPECT_THROW(s.apply_x(9), std::out_of_range);
}

TEST(state_vector, sampling_follows_born_rule) {
    auto s = prepare_initial_state(2, 1);
    GateParams g;
    g.theta = std::numbers::pi / 3;
    s.apply_gate(g, {0, 1});
    Rng rng = make_rng(4, SeedDomain::Trajectory);
    int hopped = 0;
    const int n = 20000;
    for (int k = 0; k < n; k++) {
        hopped += s.sample_configuration(rng) == 0b01;
    }
    double p = 0.75;
    EXPECT_NEAR(hopped / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
}
